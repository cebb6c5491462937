//! Long Weierstrass curves over `O_K`, the family
//! `E_α : y² − αxy = x³ − (α² + 5)`, box searches for integral points, and
//! Nagell–Lutz torsion candidates over `Q`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::quad_field::{divisible_by_two, Field, QuadInt};
use crate::search::{check_cost, SearchBox, Witness};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with its b-invariants and
/// discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassCurve {
    pub a1: QuadInt,
    pub a2: QuadInt,
    pub a3: QuadInt,
    pub a4: QuadInt,
    pub a6: QuadInt,
    pub b2: QuadInt,
    pub b4: QuadInt,
    pub b6: QuadInt,
    pub b8: QuadInt,
    pub delta: QuadInt,
}

impl WeierstrassCurve {
    pub fn new(a1: QuadInt, a2: QuadInt, a3: QuadInt, a4: QuadInt, a6: QuadInt) -> Result<Self> {
        let field = a1.field();
        if [&a2, &a3, &a4, &a6].iter().any(|c| c.field() != field) {
            return domain("Weierstrass coefficients live in different fields");
        }
        let int = |n: i64| QuadInt::from_int(field, n);
        let b2 = &a1 * &a1 + int(4) * &a2;
        let b4 = int(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + int(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + int(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3
            - &a4 * &a4;
        let delta = -(&b2 * &b2 * &b8) - int(8) * b4.pow(3) - int(27) * &b6 * &b6
            + int(9) * &b2 * &b4 * &b6;
        Ok(Self {
            a1,
            a2,
            a3,
            a4,
            a6,
            b2,
            b4,
            b6,
            b8,
            delta,
        })
    }

    pub fn field(&self) -> Field {
        self.a1.field()
    }

    pub fn is_elliptic(&self) -> bool {
        !self.delta.is_zero()
    }

    pub fn c4(&self) -> QuadInt {
        &self.b2 * &self.b2 - QuadInt::from_int(self.field(), 24) * &self.b4
    }

    pub fn c6(&self) -> QuadInt {
        let int = |n: i64| QuadInt::from_int(self.field(), n);
        -self.b2.pow(3) + int(36) * &self.b2 * &self.b4 - int(216) * &self.b6
    }

    /// `y² + a1·xy + a3·y − (x³ + a2·x² + a4·x + a6)`.
    fn residual(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        y * y + &self.a1 * x * y + &self.a3 * y - self.rhs(x)
    }

    fn rhs(&self, x: &QuadInt) -> QuadInt {
        x.pow(3) + &self.a2 * x * x + &self.a4 * x + &self.a6
    }

    fn rational_coefficients(&self) -> Option<[BigInt; 5]> {
        let coeffs = [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6];
        if coeffs.iter().all(|c| c.is_rational_integer()) {
            Some(coeffs.map(|c| c.u().clone()))
        } else {
            None
        }
    }
}

/// `E_α : y² − αxy = x³ − (α² + 5)`.
pub fn curve_from_alpha(alpha: &QuadInt) -> WeierstrassCurve {
    let field = alpha.field();
    let zero = QuadInt::zero(field);
    let a6 = -(alpha * alpha + QuadInt::from_int(field, 5));
    WeierstrassCurve::new(-alpha, zero.clone(), zero.clone(), zero, a6)
        .expect("coefficients share a field")
}

/// `α⁸ + 5α⁶ − 432α⁴ − 5184α² − 15552`, the degree-8 polynomial printed with
/// the family. Kept for comparison against the computed discriminant.
pub fn printed_discriminant_polynomial(alpha: &QuadInt) -> QuadInt {
    let int = |n: i64| QuadInt::from_int(alpha.field(), n);
    let sq = alpha * alpha;
    sq.pow(4) + int(5) * sq.pow(3) - int(432) * sq.pow(2) - int(5184) * &sq - int(15552)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaAudit {
    pub alpha: QuadInt,
    pub delta: QuadInt,
    /// `Δ(E_α) ≠ 0` from the b-invariant formulas.
    pub valid: bool,
    #[serde(rename = "paper_poly_at_alpha")]
    pub printed_poly_at_alpha: QuadInt,
    pub discriminant_matches_printed: bool,
}

pub fn audit_alpha(alpha: &QuadInt) -> AlphaAudit {
    let delta = curve_from_alpha(alpha).delta;
    let printed = printed_discriminant_polynomial(alpha);
    AlphaAudit {
        alpha: alpha.clone(),
        valid: !delta.is_zero(),
        discriminant_matches_printed: delta == printed,
        delta,
        printed_poly_at_alpha: printed,
    }
}

pub fn is_valid_alpha(alpha: &QuadInt) -> bool {
    audit_alpha(alpha).valid
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CurvePoint {
    pub x: QuadInt,
    pub y: QuadInt,
}

impl CurvePoint {
    pub fn new(x: QuadInt, y: QuadInt) -> Self {
        Self { x, y }
    }
}

pub fn point_on_curve(curve: &WeierstrassCurve, p: &CurvePoint) -> bool {
    p.x.field() == curve.field() && p.y.field() == curve.field() && curve.residual(&p.x, &p.y).is_zero()
}

/// On-curve points with `x` in the box, sorted by `(u_x, v_x, u_y, v_y)`.
///
/// Over `Q` only `x` is bounded: each `x` determines at most two integral
/// `y`, found by a perfect-square test on the discriminant of the quadratic
/// in `y`. Over quadratic fields both coordinates are scanned in the box.
pub fn integral_point_search(
    curve: &WeierstrassCurve,
    bound: u32,
    even_x_only: bool,
    cost_cap: u128,
) -> Result<Vec<CurvePoint>> {
    if !curve.is_elliptic() {
        return domain("curve is singular (Δ = 0)");
    }
    let search_box = SearchBox::new(bound)?;
    let field = curve.field();
    let side = 2 * u128::from(bound) + 1;
    let visited = match field {
        Field::Rational => side,
        Field::Quadratic(_) => side.pow(4),
    };
    check_cost(visited, cost_cap)?;
    let b = i64::from(bound);
    let slices: Vec<Vec<CurvePoint>> = (-b..=b)
        .into_par_iter()
        .filter(|ux| !even_x_only || ux % 2 == 0)
        .map(|ux| match field {
            Field::Rational => rational_points_at(curve, ux),
            Field::Quadratic(_) => quadratic_points_at(curve, search_box, ux, even_x_only),
        })
        .collect();
    Ok(slices.into_iter().flatten().collect())
}

fn rational_points_at(curve: &WeierstrassCurve, ux: i64) -> Vec<CurvePoint> {
    let field = Field::Rational;
    let x = QuadInt::from_int(field, ux);
    // y² + lin·y − rhs = 0
    let lin = (&curve.a1 * &x + &curve.a3).u().clone();
    let rhs = curve.rhs(&x).u().clone();
    let disc: BigInt = &lin * &lin + &rhs * 4;
    if disc.is_negative() {
        return Vec::new();
    }
    let root = Roots::sqrt(&disc);
    if &root * &root != disc {
        return Vec::new();
    }
    let mut ys: Vec<BigInt> = [-&lin - &root, -&lin + &root]
        .into_iter()
        .filter(|twice: &BigInt| twice.is_even())
        .map(|twice| twice / 2)
        .collect();
    ys.sort();
    ys.dedup();
    ys.into_iter()
        .map(|y| CurvePoint::new(x.clone(), QuadInt::from_int(field, y)))
        .collect()
}

fn quadratic_points_at(
    curve: &WeierstrassCurve,
    search_box: SearchBox,
    ux: i64,
    even_x_only: bool,
) -> Vec<CurvePoint> {
    let field = curve.field();
    let b = search_box.bound();
    let ys: Vec<(QuadInt, QuadInt)> = (-b..=b)
        .flat_map(|u| (-b..=b).map(move |v| (u, v)))
        .map(|(u, v)| {
            let y = QuadInt::new(field, u, v).expect("quadratic field");
            let sq = &y * &y;
            (y, sq)
        })
        .collect();
    let mut out = Vec::new();
    for vx in -b..=b {
        if even_x_only && vx % 2 != 0 {
            continue;
        }
        let x = QuadInt::new(field, ux, vx).expect("quadratic field");
        let lin = &curve.a1 * &x + &curve.a3;
        let rhs = curve.rhs(&x);
        for (y, y_sq) in &ys {
            if (y_sq + &lin * y - &rhs).is_zero() {
                out.push(CurvePoint::new(x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Reads a point of `E_α` as the solution `(x, y, α)` of
/// `x³ − y² − z² + xyz − 5 = 0`, i.e. `a = 1`, `c = 5`, `d = 3`.
pub fn point_to_fruit_witness(alpha: &QuadInt, p: &CurvePoint) -> Result<Witness> {
    if !point_on_curve(&curve_from_alpha(alpha), p) {
        return domain(format!("({}), ({}) is not on E_α", p.x, p.y));
    }
    Ok(Witness::new(p.x.clone(), p.y.clone(), alpha.clone()))
}

/// A rational point that passed the Nagell–Lutz filter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionCandidate {
    pub x: BigRational,
    pub y: BigRational,
    /// Numerator of `x` in lowest terms is even.
    pub x_numerator_even: bool,
}

fn fraction_str<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_integer() {
        s.collect_str(v.numer())
    } else {
        s.collect_str(&format_args!("{}/{}", v.numer(), v.denom()))
    }
}

impl Serialize for TorsionCandidate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Frac<'a>(&'a BigRational);
        impl Serialize for Frac<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                fraction_str(self.0, s)
            }
        }
        let mut st = s.serialize_struct("TorsionCandidate", 3)?;
        st.serialize_field("x", &Frac(&self.x))?;
        st.serialize_field("y", &Frac(&self.y))?;
        st.serialize_field("x_numerator_even", &self.x_numerator_even)?;
        st.end()
    }
}

/// Exact membership test for a rational point on a curve over `Q`.
pub fn rational_point_on_curve(curve: &WeierstrassCurve, x: &BigRational, y: &BigRational) -> bool {
    let Some([a1, a2, a3, a4, a6]) = curve.rational_coefficients() else {
        return false;
    };
    let r = |n: BigInt| BigRational::from_integer(n);
    let lhs = y * y + r(a1) * x * y + r(a3) * y;
    let rhs = x * x * x + r(a2) * x * x + r(a4) * x + r(a6);
    lhs == rhs
}

/// Largest `m` with `m² | n` together with the prime factorisation of `m`.
fn square_part(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    const TRIAL_LIMIT: u64 = 100_000_000;
    let mut rem = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    // after the loop rem has no prime factor below p and rem < p³, so it is
    // 1, a prime, a product of two primes, or a prime square
    while BigInt::from(p).pow(3) <= rem {
        if p > TRIAL_LIMIT {
            return Err(Error::Domain(format!(
                "discriminant {n} too large to factor by trial division"
            )));
        }
        let mut e = 0u32;
        while (&rem % p).is_zero() {
            rem /= p;
            e += 1;
        }
        if e >= 2 {
            out.push((BigInt::from(p), e / 2));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > BigInt::one() {
        let s = Roots::sqrt(&rem);
        if &s * &s == rem {
            out.push((s, 1));
        }
    }
    Ok(out)
}

fn divisors(factors: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs
}

/// Integer roots of `X³ + aX + c`, found by bisection on monotone pieces.
fn integer_roots_depressed_cubic(a: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let f = |x: &BigInt| x * x * x + a * x + c;
    let bound = BigInt::one() + a.abs().max(c.abs());
    let find = |lo: BigInt, hi: BigInt, increasing: bool| -> Option<BigInt> {
        let (mut lo, mut hi) = (lo, hi);
        while lo <= hi {
            let mid = (&lo + &hi).div_floor(&BigInt::from(2));
            let mut v = f(&mid);
            if !increasing {
                v = -v;
            }
            if v.is_zero() {
                return Some(mid);
            }
            if v.is_negative() {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        None
    };
    let mut roots: Vec<BigInt> = if !a.is_negative() {
        find(-&bound, bound, true).into_iter().collect()
    } else {
        // f' vanishes at ±s with 3s² = −a
        let s_floor: BigInt = Roots::sqrt(&(-a / 3));
        let s_ceil = if BigInt::from(3) * &s_floor * &s_floor == -a {
            s_floor.clone()
        } else {
            &s_floor + 1
        };
        [
            find(-&bound, -&s_ceil, true),
            find(-&s_floor, s_floor.clone(), false),
            find(s_ceil, bound, true),
        ]
        .into_iter()
        .flatten()
        .collect()
    };
    roots.sort();
    roots.dedup();
    roots
}

/// Rational points of a curve over `Q` that satisfy the Nagell–Lutz
/// conditions on the integral short model `Y² = X³ + AX + B`, with
/// `X = 36x + 3b2`, `Y = 108(2y + a1·x + a3)`, `A = −27c4`, `B = −54c6`.
///
/// Every torsion point of order ≥ 2 appears; non-torsion points passing the
/// filter may appear too.
pub fn torsion_candidates_over_q(curve: &WeierstrassCurve) -> Result<Vec<TorsionCandidate>> {
    let Some([a1, _, a3, _, _]) = curve.rational_coefficients() else {
        return domain("torsion candidates are only enumerated over Q");
    };
    if !curve.is_elliptic() {
        return domain("curve is singular (Δ = 0)");
    }
    let a = -(curve.c4().u() * BigInt::from(27));
    let b = -(curve.c6().u() * BigInt::from(54));
    let b2 = curve.b2.u().clone();
    // Y = 0 or Y² | 4A³ + 27B²
    let short_disc: BigInt = a.pow(3) * 4 + &b * &b * 27;
    let mut ys = vec![BigInt::zero()];
    for d in divisors(&square_part(&short_disc)?) {
        ys.push(-&d);
        ys.push(d);
    }

    let rat = |n: BigInt| BigRational::from_integer(n);
    let mut out = Vec::new();
    for big_y in ys {
        for big_x in integer_roots_depressed_cubic(&a, &(&b - &big_y * &big_y)) {
            let x = rat(big_x - &b2 * 3) / rat(36.into());
            let y = (rat(big_y.clone()) - rat(108.into()) * (rat(a1.clone()) * &x + rat(a3.clone())))
                / rat(216.into());
            if rational_point_on_curve(curve, &x, &y) {
                out.push(TorsionCandidate {
                    x_numerator_even: x.numer().is_even(),
                    x,
                    y,
                });
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Even-`x` candidates, i.e. the points excluded by the integral-point result.
pub fn even_numerator_candidates(candidates: &[TorsionCandidate]) -> Vec<&TorsionCandidate> {
    candidates.iter().filter(|c| c.x_numerator_even).collect()
}

/// Points of a search list with `2 | x`.
pub fn even_x_points(points: &[CurvePoint]) -> Vec<&CurvePoint> {
    points.iter().filter(|p| divisible_by_two(&p.x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{verify_witness, DEFAULT_COST_CAP};
    use num_traits::ToPrimitive;

    fn q(n: i64) -> QuadInt {
        QuadInt::from_int(Field::Rational, n)
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn alpha_zero_discriminant() {
        let e = curve_from_alpha(&q(0));
        assert_eq!(e.b6, q(-20));
        assert_eq!(e.delta, q(-10800));
        let audit = audit_alpha(&q(0));
        assert!(audit.valid);
        assert_eq!(audit.printed_poly_at_alpha, q(-15552));
        assert!(!audit.discriminant_matches_printed);
    }

    #[test]
    fn alpha_one_coefficients() {
        let e = curve_from_alpha(&q(1));
        assert_eq!(e.a1, q(-1));
        assert_eq!(e.a6, q(-6));
        assert!(is_valid_alpha(&q(1)));
    }

    #[test]
    fn alpha_omega_reduces_a6() {
        let k = Field::quadratic(17).unwrap();
        let e = curve_from_alpha(&QuadInt::omega(k).unwrap());
        assert_eq!(e.a6, QuadInt::new(k, -9, -1).unwrap());
    }

    #[test]
    fn closed_form_discriminant() {
        // Δ(E_α) = (α² + 5)(α⁶ − 432(α² + 5))
        for n in -6..=6 {
            let u = n * n;
            assert_eq!(curve_from_alpha(&q(n)).delta, q((u + 5) * (u * u * u - 432 * (u + 5))));
        }
    }

    #[test]
    fn sqrt_minus_five_is_degenerate() {
        let k = Field::quadratic(-5).unwrap();
        let alpha = QuadInt::omega(k).unwrap();
        assert!(!is_valid_alpha(&alpha));
        let e = curve_from_alpha(&alpha);
        assert!(integral_point_search(&e, 1, false, DEFAULT_COST_CAP).is_err());
    }

    #[test]
    fn membership_examples() {
        let e0 = curve_from_alpha(&q(0));
        assert!(!point_on_curve(&e0, &CurvePoint::new(q(9), q(2))));
        let e2 = curve_from_alpha(&q(2));
        assert!(!point_on_curve(&e2, &CurvePoint::new(q(1), q(-2))));
        assert!(!point_on_curve(&e2, &CurvePoint::new(q(0), q(0))));
    }

    fn cusp_control() -> WeierstrassCurve {
        WeierstrassCurve::new(q(0), q(0), q(0), q(0), q(0)).unwrap()
    }

    #[test]
    fn singular_control_curve_is_refused() {
        assert!(!cusp_control().is_elliptic());
        assert!(integral_point_search(&cusp_control(), 10, false, DEFAULT_COST_CAP).is_err());
    }

    #[test]
    fn control_curve_points() {
        // y² = x³ + 1 is nonsingular; its integral points are classical
        let e = WeierstrassCurve::new(q(0), q(0), q(0), q(0), q(1)).unwrap();
        let pts = integral_point_search(&e, 10, false, DEFAULT_COST_CAP).unwrap();
        let got: Vec<(i64, i64)> = pts
            .iter()
            .map(|p| (p.x.u().to_i64().unwrap(), p.y.u().to_i64().unwrap()))
            .collect();
        assert_eq!(got, vec![(-1, 0), (0, -1), (0, 1), (2, -3), (2, 3)]);
    }

    #[test]
    fn square_part_and_divisors() {
        let sp = square_part(&BigInt::from(675)).unwrap();
        let mut ds = divisors(&sp);
        ds.sort();
        assert_eq!(ds, [1, 3, 5, 15].map(BigInt::from).to_vec());
        let sp = square_part(&BigInt::from(2 * 101 * 101)).unwrap();
        assert_eq!(sp, vec![(BigInt::from(101), 1)]);
        let sp = square_part(&BigInt::from(-7919i64 * 7919 * 7919)).unwrap();
        assert_eq!(sp, vec![(BigInt::from(7919), 1)]);
    }

    #[test]
    fn cubic_roots_match_scan() {
        for a in -30i64..=30 {
            for c in -40i64..=40 {
                let expected: Vec<BigInt> = (-50i64..=50)
                    .filter(|x| x * x * x + a * x + c == 0)
                    .map(BigInt::from)
                    .collect();
                assert_eq!(
                    integer_roots_depressed_cubic(&a.into(), &c.into()),
                    expected,
                    "a={a} c={c}"
                );
            }
        }
    }

    #[test]
    fn torsion_candidates_of_x3_plus_1() {
        let e = WeierstrassCurve::new(q(0), q(0), q(0), q(0), q(1)).unwrap();
        let cands = torsion_candidates_over_q(&e).unwrap();
        for (x, y) in [(-1, 0), (0, 1), (0, -1), (2, 3), (2, -3)] {
            assert!(
                cands.iter().any(|c| c.x == frac(x, 1) && c.y == frac(y, 1)),
                "missing ({x}, {y})"
            );
        }
        assert!(cands.iter().all(|c| rational_point_on_curve(&e, &c.x, &c.y)));
    }

    #[test]
    fn torsion_candidates_of_e0_match_direct_enumeration() {
        // on y² = x³ − 5 directly: y = 0 or y² | 4·0 + 27·25 = 675
        let mut direct = Vec::new();
        for y in [0i64, 1, -1, 3, -3, 5, -5, 15, -15] {
            let target = y * y + 5;
            let x = (target as f64).cbrt().round() as i64;
            if x * x * x == target {
                direct.push((x, y));
            }
        }
        assert!(direct.is_empty());
        assert!(torsion_candidates_over_q(&curve_from_alpha(&q(0))).unwrap().is_empty());
    }

    #[test]
    fn torsion_candidates_on_long_model() {
        // 11a3: y² + y = x³ − x², torsion {O, (0,0), (0,−1), (1,0), (1,−1)}
        let e = WeierstrassCurve::new(q(0), q(-1), q(1), q(0), q(0)).unwrap();
        let cands = torsion_candidates_over_q(&e).unwrap();
        for (x, y) in [(0, 0), (0, -1), (1, 0), (1, -1)] {
            assert!(cands.iter().any(|c| c.x == frac(x, 1) && c.y == frac(y, 1)));
        }
        let zero = cands.iter().find(|c| c.x == frac(0, 1)).unwrap();
        assert!(zero.x_numerator_even);

        let e = WeierstrassCurve::new(q(1), q(-1), q(1), q(0), q(0)).unwrap();
        let cands = torsion_candidates_over_q(&e).unwrap();
        assert!(cands.iter().any(|c| c.x == frac(0, 1) && c.y == frac(0, 1)));
        assert!(cands.iter().all(|c| rational_point_on_curve(&e, &c.x, &c.y)));
    }

    #[test]
    fn torsion_requires_rational_curve() {
        let k = Field::quadratic(17).unwrap();
        let e = curve_from_alpha(&QuadInt::omega(k).unwrap());
        assert!(torsion_candidates_over_q(&e).is_err());
    }

    #[test]
    fn witness_from_point() {
        assert!(point_to_fruit_witness(&q(1), &CurvePoint::new(q(0), q(0))).is_err());
        for n in -6..=6 {
            let alpha = q(n);
            let e = curve_from_alpha(&alpha);
            for p in integral_point_search(&e, 200, false, DEFAULT_COST_CAP).unwrap() {
                let w = point_to_fruit_witness(&alpha, &p).unwrap();
                assert!(verify_witness(Field::Rational, &q(1), &q(5), 3, &w));
                assert!(!w.even_x);
            }
        }
    }
}
