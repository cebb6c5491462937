//! Exact arithmetic in the ring of integers of `Q` or `Q(√t)`, the splitting
//! of 2, and the residue maps `O_K → Z/2ⁿZ` attached to a degree-one
//! unramified prime above 2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Returns whether no prime square divides `|n|`.
pub fn is_squarefree(n: i64) -> Result<bool> {
    if n == 0 {
        return domain("0 is divisible by every square");
    }
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(false);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok(true)
}

/// A square-free integer other than 0 and 1. Negative values are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareFreeInt(i64);

impl SquareFreeInt {
    pub fn new(t: i64) -> Result<Self> {
        if t == 1 {
            return domain("t = 1 does not define a quadratic field");
        }
        if !is_squarefree(t)? {
            return domain(format!("{t} is not square-free"));
        }
        Ok(Self(t))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

impl fmt::Display for SquareFreeInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisKind {
    /// `ω = √t`, used when `t ≡ 2, 3 (mod 4)`.
    OmegaIsSqrt,
    /// `ω = (1 + √t)/2`, used when `t ≡ 1 (mod 4)`.
    OmegaIsHalfOnePlusSqrt,
}

/// `Q(√t)` together with its integral basis `{1, ω}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    t: SquareFreeInt,
    basis: BasisKind,
}

impl QuadField {
    pub fn new(t: i64) -> Result<Self> {
        let t = SquareFreeInt::new(t)?;
        let basis = if t.get().rem_euclid(4) == 1 {
            BasisKind::OmegaIsHalfOnePlusSqrt
        } else {
            BasisKind::OmegaIsSqrt
        };
        Ok(Self { t, basis })
    }

    pub fn t(&self) -> SquareFreeInt {
        self.t
    }

    pub fn basis_kind(&self) -> BasisKind {
        self.basis
    }

    pub fn field_discriminant(&self) -> i64 {
        match self.basis {
            BasisKind::OmegaIsSqrt => 4 * self.t.get(),
            BasisKind::OmegaIsHalfOnePlusSqrt => self.t.get(),
        }
    }

    /// `(trace, norm)` of ω, so that `ω² = trace·ω − norm`.
    fn omega_trace_norm(&self) -> (i64, i64) {
        let t = self.t.get();
        match self.basis {
            BasisKind::OmegaIsSqrt => (0, -t),
            BasisKind::OmegaIsHalfOnePlusSqrt => (1, (1 - t) / 4),
        }
    }
}

/// The base field: either `Q` or a quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Quadratic(QuadField),
}

impl Field {
    pub fn quadratic(t: i64) -> Result<Self> {
        QuadField::new(t).map(Field::Quadratic)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }

    /// Rank of `O_K` over `Z`.
    pub fn degree(&self) -> u32 {
        match self {
            Field::Rational => 1,
            Field::Quadratic(_) => 2,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Quadratic(k) => write!(f, "{}", k.t),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let t: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("field must be a decimal integer or Q, got {s:?}")))?;
        Field::quadratic(t)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An element `u + v·ω` of `O_K`, stored in integral-basis coordinates.
///
/// Over `Q` the second coordinate is always zero. Arithmetic between elements
/// of different fields panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    u: BigInt,
    v: BigInt,
    field: Field,
}

impl QuadInt {
    pub fn new(field: Field, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let (u, v) = (u.into(), v.into());
        if field.is_rational() && !v.is_zero() {
            return domain("elements of Q have no ω coordinate");
        }
        Ok(Self { u, v, field })
    }

    pub fn from_int(field: Field, n: impl Into<BigInt>) -> Self {
        Self {
            u: n.into(),
            v: BigInt::zero(),
            field,
        }
    }

    pub fn zero(field: Field) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The second integral basis element.
    pub fn omega(field: Field) -> Result<Self> {
        Self::new(field, 0, 1)
    }

    /// Parses the `"u,v"` text form; over `Q` a bare `"u"` is accepted too.
    pub fn parse(field: Field, s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"u,v\" with decimal integers, got {s:?}"));
        let mut parts = s.split(',');
        let u: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let v: BigInt = match parts.next() {
            Some(p) => p.trim().parse().map_err(|_| bad())?,
            None if field.is_rational() => BigInt::zero(),
            None => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::new(field, u, v)
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// True when the element lies in `Z`.
    pub fn is_rational_integer(&self) -> bool {
        self.v.is_zero()
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Lexicographic key on `(u, v)`.
    pub fn coords(&self) -> (&BigInt, &BigInt) {
        (&self.u, &self.v)
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.field, other.field,
            "arithmetic between elements of different fields"
        );
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.v)
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords().cmp(&other.coords())
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        self.check_same_field(rhs);
        QuadInt {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
            field: self.field,
        }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        self.check_same_field(rhs);
        QuadInt {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
            field: self.field,
        }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        self.check_same_field(rhs);
        match self.field {
            Field::Rational => QuadInt {
                u: &self.u * &rhs.u,
                v: BigInt::zero(),
                field: self.field,
            },
            Field::Quadratic(k) => {
                // ω² = trace·ω − norm
                let (trace, norm) = k.omega_trace_norm();
                let vv = &self.v * &rhs.v;
                let u = &self.u * &rhs.u - &vv * norm;
                let v = &self.u * &rhs.v + &self.v * &rhs.u + vv * trace;
                QuadInt { u, v, field: self.field }
            }
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            u: -&self.u,
            v: -&self.v,
            field: self.field,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$m:ident),*) => {$(
        impl $tr<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: &QuadInt) -> QuadInt { (&self).$m(rhs) }
        }
        impl<'a> $tr<QuadInt> for &'a QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

/// True iff `x ∈ 2·O_K`, i.e. both integral-basis coordinates are even.
pub fn divisible_by_two(x: &QuadInt) -> bool {
    x.u.is_even() && x.v.is_even()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
    /// `K = Q`: the prime (2) itself.
    Rational,
}

pub fn splitting_of_two(t: SquareFreeInt) -> SplitType {
    match t.get().rem_euclid(8) {
        1 => SplitType::Split,
        5 => SplitType::Inert,
        _ => SplitType::Ramified,
    }
}

pub fn split_type(field: &Field) -> SplitType {
    match field {
        Field::Rational => SplitType::Rational,
        Field::Quadratic(k) => splitting_of_two(k.t),
    }
}

/// Whether some prime above 2 has ramification index and inertia degree 1.
pub fn t_k_nonempty(field: &Field) -> bool {
    matches!(split_type(field), SplitType::Split | SplitType::Rational)
}

/// The canonical 2-adic square root of `t` modulo `2ⁿ`.
///
/// Starts at `s = 1` and, for `k = 3..n`, adds `2^(k-1)` whenever
/// `s² ≢ t (mod 2^(k+1))`. Requires `t ≡ 1 (mod 8)` and `n ≥ 3`.
pub fn hensel_sqrt(t: i64, n: u32) -> Result<BigInt> {
    if t.rem_euclid(8) != 1 {
        return domain(format!("{t} has no 2-adic square root (t mod 8 ≠ 1)"));
    }
    if n < 3 {
        return domain(format!("precision {n} below the 3-bit base case"));
    }
    let t = BigInt::from(t);
    let mut s = BigInt::one();
    for k in 3..n {
        let modulus = BigInt::one() << (k + 1);
        if (&s * &s - &t).mod_floor(&modulus) != BigInt::zero() {
            s += BigInt::one() << (k - 1);
        }
    }
    Ok(s)
}

/// Which of the two primes above a split 2 the residue map reduces modulo:
/// `Canonical` sends `√t` to the Hensel-chain root `s`, `Conjugate` to `−s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Canonical,
    Conjugate,
}

/// Splitting datum of 2 in `K`, with the 2-adic root when 2 splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeAbove2 {
    field: Field,
    split_type: SplitType,
    canonical_root: Option<BigInt>,
    precision: u32,
    branch: Branch,
}

impl PrimeAbove2 {
    /// At least three bits of the root are always computed.
    pub fn new(field: Field, precision: u32) -> Self {
        let split_type = split_type(&field);
        let precision = precision.max(3);
        let canonical_root = match (&field, split_type) {
            (Field::Quadratic(k), SplitType::Split) => {
                Some(hensel_sqrt(k.t.get(), precision).expect("split t is 1 mod 8"))
            }
            _ => None,
        };
        Self {
            field,
            split_type,
            canonical_root,
            precision,
            branch: Branch::Canonical,
        }
    }

    /// A prime carrying enough root precision for `residue_map(·, ·, n)`.
    pub fn for_residues(field: Field, n: u32) -> Self {
        Self::new(field, n + 2)
    }

    /// The other prime above 2; identical unless 2 splits.
    pub fn conjugate(&self) -> Self {
        let mut p = self.clone();
        if p.split_type == SplitType::Split {
            p.branch = match p.branch {
                Branch::Canonical => Branch::Conjugate,
                Branch::Conjugate => Branch::Canonical,
            };
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn split_type(&self) -> SplitType {
        self.split_type
    }

    pub fn canonical_root(&self) -> Option<&BigInt> {
        self.canonical_root.as_ref()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Image of ω in `Z/2ⁿZ`.
    fn omega_image(&self, n: u32) -> Result<BigInt> {
        let needed = n + 2;
        if self.precision < needed {
            return Err(Error::Precision {
                needed,
                available: self.precision,
            });
        }
        let root = self.canonical_root.as_ref().expect("split prime carries a root");
        // s is a root of X² − t modulo 2^(n+2) and so is determined modulo 2^(n+1)
        let lift = BigInt::one() << (n + 1);
        let mut s = root.mod_floor(&lift);
        if self.branch == Branch::Conjugate {
            s = (-s).mod_floor(&lift);
        }
        // split fields always have ω = (1 + √t)/2
        Ok(((BigInt::one() + s) >> 1u32).mod_floor(&(BigInt::one() << n)))
    }
}

/// The ring homomorphism `O_K → O_K/𝔓ⁿ ≅ Z/2ⁿZ`, returned as a value in `[0, 2ⁿ)`.
///
/// Needs a prime with `e = f = 1` (split or `K = Q`) whose root carries at
/// least `n + 2` bits.
pub fn residue_map(x: &QuadInt, p: &PrimeAbove2, n: u32) -> Result<BigInt> {
    if n == 0 {
        return domain("residue precision must be positive");
    }
    if x.field != p.field {
        return domain("element and prime belong to different fields");
    }
    let modulus = BigInt::one() << n;
    match p.split_type {
        SplitType::Rational => Ok(x.u.mod_floor(&modulus)),
        SplitType::Split => {
            let sigma = p.omega_image(n)?;
            Ok((&x.u + &x.v * sigma).mod_floor(&modulus))
        }
        SplitType::Inert => Err(Error::Unsupported(
            "2 is inert: residue field has 4 elements".into(),
        )),
        SplitType::Ramified => Err(Error::Unsupported(
            "2 ramifies: O_K/𝔓² is not Z/4Z".into(),
        )),
    }
}

/// Convenience for the mod-4 residues used by the obstruction engine.
pub(crate) fn residue_mod4(x: &QuadInt, p: &PrimeAbove2) -> Result<u8> {
    let r = residue_map(x, p, 2)?;
    Ok(u8::try_from(r.abs()).expect("residue below 4"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(t: i64) -> Field {
        Field::quadratic(t).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(17).unwrap());
        assert!(!is_squarefree(12).unwrap());
        assert!(is_squarefree(33).unwrap());
        assert!(is_squarefree(-7).unwrap());
        assert!(!is_squarefree(-18).unwrap());
        assert!(matches!(is_squarefree(0), Err(Error::Domain(_))));
    }

    #[test]
    fn squarefree_int_rejects_bad_t() {
        assert!(SquareFreeInt::new(1).is_err());
        assert!(SquareFreeInt::new(0).is_err());
        assert!(SquareFreeInt::new(8).is_err());
        assert!(SquareFreeInt::new(-1).is_ok());
    }

    #[test]
    fn basis_by_t_mod_4() {
        let f = QuadField::new(17).unwrap();
        assert_eq!(f.basis_kind(), BasisKind::OmegaIsHalfOnePlusSqrt);
        assert_eq!(f.field_discriminant(), 17);
        let f = QuadField::new(3).unwrap();
        assert_eq!(f.basis_kind(), BasisKind::OmegaIsSqrt);
        assert_eq!(f.field_discriminant(), 12);
        let f = QuadField::new(-7).unwrap();
        assert_eq!(f.basis_kind(), BasisKind::OmegaIsHalfOnePlusSqrt);
        let f = QuadField::new(-1).unwrap();
        assert_eq!(f.basis_kind(), BasisKind::OmegaIsSqrt);
    }

    #[test]
    fn omega_squared_reduces_by_minimal_polynomial() {
        let w = QuadInt::omega(k(17)).unwrap();
        assert_eq!(&w * &w, QuadInt::new(k(17), 4, 1).unwrap());
        let w = QuadInt::omega(k(3)).unwrap();
        assert_eq!(&w * &w, QuadInt::from_int(k(3), 3));
        let w = QuadInt::omega(k(-7)).unwrap();
        assert_eq!(&w * &w, QuadInt::new(k(-7), -2, 1).unwrap());
    }

    #[test]
    fn rational_elements_have_no_omega() {
        assert!(QuadInt::new(Field::Rational, 1, 1).is_err());
        assert!(QuadInt::omega(Field::Rational).is_err());
    }

    #[test]
    fn parse_text_form() {
        let x = QuadInt::parse(k(17), "-3, 4").unwrap();
        assert_eq!(x, QuadInt::new(k(17), -3, 4).unwrap());
        assert_eq!(x.to_string(), "-3,4");
        assert_eq!(QuadInt::parse(Field::Rational, "5").unwrap(), QuadInt::from_int(Field::Rational, 5));
        assert!(QuadInt::parse(k(17), "5").is_err());
        assert!(QuadInt::parse(k(17), "1,2,3").is_err());
        assert!(QuadInt::parse(Field::Rational, "1,1").is_err());
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("-7".parse::<Field>().unwrap(), k(-7));
        assert!("12".parse::<Field>().is_err());
    }

    #[test]
    fn splitting_examples() {
        let s = |t| splitting_of_two(SquareFreeInt::new(t).unwrap());
        assert_eq!(s(17), SplitType::Split);
        assert_eq!(s(5), SplitType::Inert);
        assert_eq!(s(3), SplitType::Ramified);
        assert_eq!(s(2), SplitType::Ramified);
        assert_eq!(s(-7), SplitType::Split);
        assert_eq!(s(-3), SplitType::Inert);
    }

    #[test]
    fn t_k_examples() {
        assert!(t_k_nonempty(&k(17)));
        assert!(!t_k_nonempty(&k(5)));
        assert!(!t_k_nonempty(&k(3)));
        assert!(t_k_nonempty(&Field::Rational));
    }

    /// Every odd `s < 2ⁿ` with `s² ≡ t (mod 2ⁿ)`.
    fn odd_roots(t: i64, n: u32) -> Vec<i64> {
        let m = 1i64 << n;
        (1..m).step_by(2).filter(|s| (s * s - t).rem_euclid(m) == 0).collect()
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_sqrt(17, 3).unwrap(), BigInt::from(1));
        assert_eq!(odd_roots(17, 5), vec![7, 9, 23, 25]);
        assert_eq!(hensel_sqrt(17, 5).unwrap(), BigInt::from(9));
        let s33 = hensel_sqrt(33, 4).unwrap();
        assert!(odd_roots(33, 4).contains(&i64::try_from(s33.clone()).unwrap()));
        assert_eq!(s33, BigInt::from(1));
        assert!(hensel_sqrt(5, 6).is_err());
        assert!(hensel_sqrt(17, 2).is_err());
    }

    #[test]
    fn hensel_matches_exhaustive_roots() {
        for t in [17i64, 33, 41, -7, -15, 57] {
            for n in 3..=12 {
                let s = i64::try_from(hensel_sqrt(t, n).unwrap()).unwrap();
                assert!(s > 0 && s < 1 << n);
                assert!(odd_roots(t, n).contains(&s), "t={t} n={n} s={s}");
            }
        }
    }

    #[test]
    fn residue_map_examples() {
        let f = k(17);
        let p = PrimeAbove2::for_residues(f, 2);
        assert_eq!(residue_map(&QuadInt::from_int(f, 2), &p, 2).unwrap(), BigInt::from(2));
        let w = QuadInt::omega(f).unwrap();
        assert_eq!(residue_map(&w, &p, 2).unwrap(), BigInt::from(1));
        assert_eq!(residue_map(&QuadInt::zero(f), &p, 2).unwrap(), BigInt::zero());
        // ω ↦ 1 is a root of x² − x − 4 modulo 4
        assert_eq!((1 - 1 - 4i64).rem_euclid(4), 0);
    }

    #[test]
    fn residue_map_rejects_unsuitable_primes() {
        let x = QuadInt::one(k(5));
        let p = PrimeAbove2::for_residues(k(5), 2);
        assert!(matches!(residue_map(&x, &p, 2), Err(Error::Unsupported(_))));
        let x = QuadInt::one(k(3));
        let p = PrimeAbove2::for_residues(k(3), 2);
        assert!(matches!(residue_map(&x, &p, 2), Err(Error::Unsupported(_))));
        let x = QuadInt::one(k(17));
        let p = PrimeAbove2::new(k(17), 5);
        assert!(matches!(residue_map(&x, &p, 4), Err(Error::Precision { needed: 6, available: 5 })));
        assert!(residue_map(&x, &p, 3).is_ok());
    }

    #[test]
    fn rational_residue_is_reduction() {
        let p = PrimeAbove2::new(Field::Rational, 1);
        let x = QuadInt::from_int(Field::Rational, -5);
        assert_eq!(residue_map(&x, &p, 3).unwrap(), BigInt::from(3));
        assert_eq!(residue_map(&x, &p, 40).unwrap(), (BigInt::one() << 40u32) - 5);
    }

    #[test]
    fn divisibility_by_two() {
        let f = k(17);
        assert!(divisible_by_two(&QuadInt::new(f, 2, 2).unwrap()));
        assert!(!divisible_by_two(&QuadInt::new(f, 2, 1).unwrap()));
        assert!(divisible_by_two(&QuadInt::zero(f)));
    }

    #[test]
    fn conjugate_branch_sends_omega_elsewhere() {
        let f = k(17);
        let p = PrimeAbove2::for_residues(f, 1);
        let w = QuadInt::omega(f).unwrap();
        let a = residue_map(&w, &p, 1).unwrap();
        let b = residue_map(&w, &p.conjugate(), 1).unwrap();
        // ω and 1 − ω = ω̄ swap roles
        assert_eq!(a + b, BigInt::one());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = QuadInt::new(k(-7), 3, -2).unwrap();
        let mut acc = QuadInt::one(k(-7));
        for e in 0..9 {
            assert_eq!(x.pow(e), acc);
            acc = &acc * &x;
        }
    }
}
