//! Local non-solvability of `a·x^d − y² − z² + x·y·z − c = 0` with `2 | x`,
//! decided in `O_K/𝔓² ≅ Z/4Z` for a prime 𝔓 above 2 with `e = f = 1`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quad_field::{residue_mod4, t_k_nonempty, Field, PrimeAbove2, QuadInt};
use crate::serde_util::decimal;

/// `c = 2^d·b − 3^r`.
pub fn compute_c(b: &QuadInt, r: u32, d: u32) -> QuadInt {
    let field = b.field();
    let two_d = QuadInt::from_int(field, BigInt::from(1) << d);
    let three_r = QuadInt::from_int(field, num_traits::pow(BigInt::from(3), r as usize));
    &two_d * b - three_r
}

/// The parameters `(a, b, r, d)` with the derived constant `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FruitParams {
    a: QuadInt,
    b: QuadInt,
    #[serde(serialize_with = "decimal")]
    r: u32,
    #[serde(serialize_with = "decimal")]
    d: u32,
    c: QuadInt,
}

impl FruitParams {
    pub fn new(a: QuadInt, b: QuadInt, r: u32, d: u32) -> Result<Self> {
        if a.field() != b.field() {
            return domain("a and b live in different fields");
        }
        if a.is_zero() || b.is_zero() {
            return domain("a and b must be nonzero");
        }
        if r == 0 || d == 0 {
            return domain("r and d must be positive");
        }
        let c = compute_c(&b, r, d);
        Ok(Self { a, b, r, d, c })
    }

    pub fn a(&self) -> &QuadInt {
        &self.a
    }

    pub fn b(&self) -> &QuadInt {
        &self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn c(&self) -> &QuadInt {
        &self.c
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }
}

/// Stated hypotheses (`d` odd, `r ≥ 2`) next to the ones the mod-4 argument uses (`d ≥ 2`, `r` odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub d_is_odd: bool,
    pub d_at_least_2: bool,
    pub r_at_least_2: bool,
    pub r_is_odd: bool,
    /// `d` odd and `r ≥ 2`.
    pub statement_satisfied: bool,
    /// `d ≥ 2` and `r` odd.
    pub proof_effective: bool,
}

impl HypothesisReport {
    pub fn new(r: u32, d: u32) -> Self {
        let d_is_odd = d % 2 == 1;
        let d_at_least_2 = d >= 2;
        let r_at_least_2 = r >= 2;
        let r_is_odd = r % 2 == 1;
        Self {
            d_is_odd,
            d_at_least_2,
            r_at_least_2,
            r_is_odd,
            statement_satisfied: d_is_odd && r_at_least_2,
            proof_effective: d_at_least_2 && r_is_odd,
        }
    }

    pub fn mismatch(&self) -> bool {
        self.statement_satisfied != self.proof_effective
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NoSolutionWithEvenX,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub field: Field,
    pub a: QuadInt,
    pub b: QuadInt,
    #[serde(serialize_with = "decimal")]
    pub r: u32,
    #[serde(serialize_with = "decimal")]
    pub d: u32,
    pub c: QuadInt,
    pub tk_nonempty: bool,
    #[serde(serialize_with = "crate::serde_util::opt_decimal")]
    pub a_mod4: Option<u8>,
    #[serde(rename = "c_mod4", serialize_with = "crate::serde_util::opt_decimal")]
    pub c_residue_mod4: Option<u8>,
    pub locally_obstructed: bool,
    #[serde(rename = "hypotheses")]
    pub hypothesis: HypothesisReport,
    pub verdict: Verdict,
}

/// `Y = β − α₁γ`, `Z = γ`.
pub fn reduce_completed_square(
    alpha1: &QuadInt,
    beta: &QuadInt,
    gamma: &QuadInt,
) -> (QuadInt, QuadInt) {
    (beta - alpha1 * gamma, gamma.clone())
}

/// Checks, as an exact identity at the given values, that substituting
/// `x = 2α₁` into the equation and completing the square in `β` gives
/// `Y² − (α₁² − 1)Z² = 2^d·α₁^d·a − c`.
///
/// Both sides of the equivalence are evaluated as differences (lhs − rhs);
/// the identity holds when those differences agree.
pub fn verify_reduction_identity(
    alpha1: &QuadInt,
    beta: &QuadInt,
    gamma: &QuadInt,
    a: &QuadInt,
    c: &QuadInt,
    d: u32,
) -> bool {
    let field = alpha1.field();
    let one = QuadInt::one(field);
    let two = QuadInt::from_int(field, 2);
    let x = &two * alpha1;

    let original = beta * beta - &two * alpha1 * beta * gamma + gamma * gamma
        - (a * &x.pow(d) - c);

    let (y, z) = reduce_completed_square(alpha1, beta, gamma);
    let reduced = &y * &y - (alpha1 * alpha1 - one) * (&z * &z)
        - (two.pow(d) * alpha1.pow(d) * a - c);

    original == reduced
}

/// Whether no `(x, y, z) ∈ (Z/4Z)³` with `x ∈ {0, 2}` satisfies
/// `a·x^d − y² − z² + x·y·z ≡ c (mod 4)`. Exhausts all 32 triples.
pub fn local_obstruction_mod_p2(a_res: u8, c_res: u8, d: u32) -> bool {
    let (a, c) = (i32::from(a_res % 4), i32::from(c_res % 4));
    for x in [0i32, 2] {
        let xd = pow_mod4(x, d);
        for y in 0..4i32 {
            for z in 0..4i32 {
                let value = a * xd - y * y - z * z + x * y * z - c;
                if value.rem_euclid(4) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn pow_mod4(base: i32, exp: u32) -> i32 {
    (0..exp).fold(1, |acc, _| acc * base % 4)
}

/// Decides the local obstruction using the canonical prime above 2.
pub fn decide(field: Field, params: &FruitParams) -> Result<ObstructionReport> {
    decide_with_prime(&PrimeAbove2::for_residues(field, 2), params)
}

/// Decides the local obstruction modulo `𝔓²` for the given prime.
///
/// Returns `Inconclusive` whenever the obstruction is absent or the prime is
/// unsuitable; absence of an obstruction says nothing about global solutions.
pub fn decide_with_prime(prime: &PrimeAbove2, params: &FruitParams) -> Result<ObstructionReport> {
    let field = prime.field();
    if params.field() != field {
        return domain("parameters and prime belong to different fields");
    }
    let residues = if t_k_nonempty(&field) {
        match (residue_mod4(&params.a, prime), residue_mod4(&params.c, prime)) {
            (Ok(a), Ok(c)) => Some((a, c)),
            (Err(Error::Unsupported(_)), _) | (_, Err(Error::Unsupported(_))) => None,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    } else {
        None
    };
    let locally_obstructed = residues
        .map(|(a, c)| local_obstruction_mod_p2(a, c, params.d))
        .unwrap_or(false);
    let tk_nonempty = residues.is_some();
    let verdict = if tk_nonempty && locally_obstructed {
        Verdict::NoSolutionWithEvenX
    } else {
        Verdict::Inconclusive
    };
    Ok(ObstructionReport {
        field,
        a: params.a.clone(),
        b: params.b.clone(),
        r: params.r,
        d: params.d,
        c: params.c.clone(),
        tk_nonempty,
        a_mod4: residues.map(|(a, _)| a),
        c_residue_mod4: residues.map(|(_, c)| c),
        locally_obstructed,
        hypothesis: HypothesisReport::new(params.r, params.d),
        verdict,
    })
}
