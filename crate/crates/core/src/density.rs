//! Square-free integers `t ≥ 2` in residue classes: a segmented sieve,
//! empirical densities, and the asymptotic constant of the residue-class
//! count `#{t ≤ X square-free, t ≡ r (mod N)} ~ q·(6/π²)·X`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::serde_util::decimal;

/// Default segment length is `2^26` integers.
pub const DEFAULT_SEGMENT_BITS: u32 = 26;

/// Digits used when rendering exact rationals as decimals.
pub const RENDER_DIGITS: usize = 12;

/// Bit-packed square-free indicator for the integers `0..=limit`.
///
/// Entries 0 and 1 are always false: only `t ≥ 2` is counted.
#[derive(Debug, Clone)]
pub struct SquarefreeTable {
    limit: u64,
    words: Vec<u64>,
}

impl SquarefreeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_squarefree(&self, t: u64) -> bool {
        t <= self.limit && self.words[(t / 64) as usize] >> (t % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(|&t| self.is_squarefree(t))
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// One sieved block `[start, start + 64·words.len())`; `start` is a multiple of 64.
struct Segment {
    start: u64,
    words: Vec<u64>,
}

impl Segment {
    fn get(&self, t: u64) -> bool {
        let i = t - self.start;
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    fn popcount(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

struct Sieve {
    limit: u64,
    segment_len: u64,
    primes: Vec<u64>,
}

impl Sieve {
    fn new(limit: u64, segment_bits: u32) -> Result<Self> {
        if limit < 2 {
            return domain("sieve limit must be at least 2");
        }
        if !(6..=40).contains(&segment_bits) {
            return domain("segment bits must lie in 6..=40");
        }
        Ok(Self {
            limit,
            segment_len: 1u64 << segment_bits,
            primes: primes_up_to(limit.isqrt()),
        })
    }

    fn segment_count(&self) -> u64 {
        self.limit / self.segment_len + 1
    }

    fn segment(&self, index: u64) -> Segment {
        let start = index * self.segment_len;
        let end = (start + self.segment_len - 1).min(self.limit);
        let len = end - start + 1;
        let mut words = vec![u64::MAX; len.div_ceil(64) as usize];
        if !len.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (len % 64)) - 1;
        }
        if start == 0 {
            // 0 and 1 are outside the counted range
            words[0] &= !0b11;
        }
        for &p in &self.primes {
            let sq = p * p;
            if sq > end {
                break;
            }
            let mut m = start.div_ceil(sq) * sq;
            while m <= end {
                let i = m - start;
                words[(i / 64) as usize] &= !(1 << (i % 64));
                m += sq;
            }
        }
        Segment { start, words }
    }

    fn map_reduce<T, F>(&self, per_segment: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&Segment) -> T + Sync + Send,
    {
        (0..self.segment_count())
            .into_par_iter()
            .map(|i| per_segment(&self.segment(i)))
            .collect()
    }
}

/// Materialises the square-free indicator on `2..=limit`.
pub fn squarefree_sieve(limit: u64) -> Result<SquarefreeTable> {
    squarefree_sieve_with(limit, DEFAULT_SEGMENT_BITS)
}

pub fn squarefree_sieve_with(limit: u64, segment_bits: u32) -> Result<SquarefreeTable> {
    let sieve = Sieve::new(limit, segment_bits)?;
    let words = sieve
        .map_reduce(|s| s.words.clone())
        .into_iter()
        .flatten()
        .collect();
    Ok(SquarefreeTable { limit, words })
}

/// `#{2 ≤ t ≤ limit : t square-free}`.
pub fn count_squarefree(limit: u64, segment_bits: u32) -> Result<u64> {
    let sieve = Sieve::new(limit, segment_bits)?;
    Ok(sieve.map_reduce(Segment::popcount).into_iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueClassQuery {
    #[serde(serialize_with = "decimal")]
    r: u64,
    #[serde(rename = "N", serialize_with = "decimal")]
    modulus: u64,
    #[serde(rename = "X", serialize_with = "decimal")]
    limit: u64,
}

impl ResidueClassQuery {
    pub fn new(r: u64, modulus: u64, limit: u64) -> Result<Self> {
        if modulus == 0 {
            return domain("modulus must be positive");
        }
        if r >= modulus {
            return domain(format!("residue {r} not reduced modulo {modulus}"));
        }
        if limit < 2 {
            return domain("limit must be at least 2");
        }
        Ok(Self { r, modulus, limit })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

fn count_class_in(segment: &Segment, q: &ResidueClassQuery, end: u64) -> u64 {
    let seg_end = (segment.start + 64 * segment.words.len() as u64 - 1).min(end);
    let offset = (q.r + q.modulus - segment.start % q.modulus) % q.modulus;
    let mut t = segment.start + offset;
    let mut count = 0;
    while t <= seg_end {
        count += u64::from(segment.get(t));
        t += q.modulus;
    }
    count
}

/// `#{2 ≤ t ≤ X : t square-free, t ≡ r (mod N)}`.
pub fn count_residue_class(q: &ResidueClassQuery, segment_bits: u32) -> Result<u64> {
    let sieve = Sieve::new(q.limit, segment_bits)?;
    Ok(sieve
        .map_reduce(|s| count_class_in(s, q, q.limit))
        .into_iter()
        .sum())
}

/// Prime factorisation of a small positive integer by trial division.
fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `φ(N) / (s·φ(N/s)·N·∏_{p|N}(1 − 1/p²))` with `s = gcd(r, N)`.
///
/// The square-free count in the class is asymptotic to this constant times
/// `(6/π²)·X`, so it is also the limiting share of the class among all
/// square-free integers. Requires `s` square-free.
pub fn fs_asymptotic_constant(r: i64, modulus: u64) -> Result<BigRational> {
    if modulus == 0 {
        return domain("modulus must be positive");
    }
    let s = r.unsigned_abs().gcd(&modulus);
    if factor(s).iter().any(|&(_, e)| e > 1) {
        return domain(format!(
            "gcd({r}, {modulus}) = {s} is not square-free; the asymptotic does not apply"
        ));
    }
    let euler = factor(modulus)
        .into_iter()
        .fold(BigRational::one(), |acc, (p, _)| {
            acc * (BigRational::one() - ratio(1, p * p))
        });
    let denom = ratio(s, 1) * ratio(euler_phi(modulus / s), 1) * ratio(modulus, 1) * euler;
    Ok(ratio(euler_phi(modulus), 1) / denom)
}

/// Decimal rendering of a non-negative rational with `digits` significant
/// digits, rounded half up, computed exactly.
pub fn render_decimal(value: &BigRational, digits: usize) -> String {
    assert!(digits > 0);
    if value.is_zero() {
        return "0".into();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let v = value.abs();
    let ten = BigInt::from(10);
    // choose k so that 10^(digits−1) ≤ v·10^k < 10^digits
    let lower = num_traits::pow(ten.clone(), digits - 1);
    let upper = &lower * &ten;
    let mut k: i64 = 0;
    let scaled = |k: i64| -> BigRational {
        if k >= 0 {
            &v * BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            &v / BigRational::from_integer(num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while scaled(k).floor().to_integer() >= upper {
        k -= 1;
    }
    while scaled(k).floor().to_integer() < lower {
        k += 1;
    }
    let mut mantissa = (scaled(k) + ratio(1, 2)).floor().to_integer();
    if mantissa >= upper {
        mantissa /= &ten;
        k -= 1;
    }
    let mut text = mantissa.to_string();
    if k <= 0 {
        text.extend(std::iter::repeat_n('0', (-k) as usize));
        return format!("{sign}{text}");
    }
    let k = k as usize;
    if text.len() <= k {
        text = format!("{}{}", "0".repeat(k - text.len() + 1), text);
    }
    let point = text.len() - k;
    let (int_part, frac_part) = text.split_at(point);
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Counts, empirical densities and the asymptotic prediction for one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub query: ResidueClassQuery,
    pub count_class: u64,
    pub count_squarefree: u64,
    /// `count_class / count_squarefree`.
    pub rel_density_empirical: BigRational,
    /// `count_class / X`.
    pub abs_density_empirical: BigRational,
    /// `q` with prediction `q·(6/π²)·X`; `None` when `gcd(r, N)` is not square-free.
    pub asymptotic_constant: Option<BigRational>,
}

impl DensityReport {
    /// Predicted relative density, equal to the asymptotic constant.
    pub fn predicted_rel_density(&self) -> Option<&BigRational> {
        self.asymptotic_constant.as_ref()
    }

    /// `π²` times the predicted absolute density, i.e. `6q`.
    pub fn abs_predicted_times_pi2(&self) -> Option<BigRational> {
        self.asymptotic_constant
            .as_ref()
            .map(|q| q * BigRational::from_integer(6.into()))
    }

    /// Predicted absolute density `6q/π²` as a float; π enters only here.
    pub fn abs_predicted(&self) -> Option<f64> {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        self.abs_predicted_times_pi2()
            .and_then(|v| v.to_f64())
            .map(|v| v / pi2)
    }

    pub fn to_json_view(&self) -> DensityJson {
        let frac = |r: &BigRational| format!("{}/{}", r.numer(), r.denom());
        DensityJson {
            r: self.query.r.to_string(),
            modulus: self.query.modulus.to_string(),
            limit: self.query.limit.to_string(),
            count_class: self.count_class.to_string(),
            count_squarefree: self.count_squarefree.to_string(),
            rel_empirical: frac(&self.rel_density_empirical),
            rel_empirical_decimal: render_decimal(&self.rel_density_empirical, RENDER_DIGITS),
            rel_predicted: self.predicted_rel_density().map(frac),
            rel_predicted_decimal: self
                .predicted_rel_density()
                .map(|q| render_decimal(q, RENDER_DIGITS)),
            abs_empirical: frac(&self.abs_density_empirical),
            abs_empirical_decimal: render_decimal(&self.abs_density_empirical, RENDER_DIGITS),
            abs_predicted_times_pi2: self.abs_predicted_times_pi2().as_ref().map(frac),
            abs_predicted_decimal: self
                .abs_predicted()
                .map(|v| format!("{:.*e}", RENDER_DIGITS - 1, v)),
        }
    }
}

/// Wire form of a [`DensityReport`]; fractions are `"p/q"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct DensityJson {
    pub r: String,
    #[serde(rename = "N")]
    pub modulus: String,
    #[serde(rename = "X")]
    pub limit: String,
    pub count_class: String,
    pub count_squarefree: String,
    pub rel_empirical: String,
    pub rel_empirical_decimal: String,
    pub rel_predicted: Option<String>,
    pub rel_predicted_decimal: Option<String>,
    pub abs_empirical: String,
    pub abs_empirical_decimal: String,
    pub abs_predicted_times_pi2: Option<String>,
    pub abs_predicted_decimal: Option<String>,
}

pub fn density_report(q: &ResidueClassQuery, segment_bits: u32) -> Result<DensityReport> {
    let sieve = Sieve::new(q.limit, segment_bits)?;
    let (count_class, count_squarefree) = sieve
        .map_reduce(|s| (count_class_in(s, q, q.limit), s.popcount()))
        .into_iter()
        .fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
    let asymptotic_constant = fs_asymptotic_constant(q.r as i64, q.modulus).ok();
    Ok(DensityReport {
        query: *q,
        count_class,
        count_squarefree,
        rel_density_empirical: ratio(count_class, count_squarefree),
        abs_density_empirical: ratio(count_class, q.limit),
        asymptotic_constant,
    })
}
