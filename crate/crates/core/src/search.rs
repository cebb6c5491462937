//! Exhaustive search for solutions of `a·x^d − y² − z² + x·y·z − c = 0` in a
//! coordinate box of `O_K³`. Shares no code with the obstruction engine.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quad_field::{divisible_by_two, Field, QuadInt};

/// Default ceiling on the number of tuples a single search may visit.
pub const DEFAULT_COST_CAP: u128 = 1_000_000_000;

/// Every integral-basis coordinate ranges over `[−bound, bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBox {
    bound: i64,
}

impl SearchBox {
    pub fn new(bound: u32) -> Result<Self> {
        if bound == 0 {
            return domain("search bound must be at least 1");
        }
        Ok(Self {
            bound: i64::from(bound),
        })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// `(2B+1)^(3·[K:Q])`.
    pub fn size(&self, field: Field) -> u128 {
        let side = (2 * self.bound + 1) as u128;
        side.pow(3 * field.degree())
    }

    fn range(&self) -> std::ops::RangeInclusive<i64> {
        -self.bound..=self.bound
    }

    fn contains(&self, x: &QuadInt) -> bool {
        let b = BigInt::from(self.bound);
        x.u().abs() <= b && x.v().abs() <= b
    }
}

pub(crate) fn check_cost(estimate: u128, cap: u128) -> Result<()> {
    if estimate > cap {
        Err(Error::CostCap { estimate, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: QuadInt,
    pub y: QuadInt,
    pub z: QuadInt,
    pub even_x: bool,
}

impl Witness {
    pub fn new(x: QuadInt, y: QuadInt, z: QuadInt) -> Self {
        let even_x = divisible_by_two(&x);
        Self { x, y, z, even_x }
    }

    fn key(&self) -> [&BigInt; 6] {
        [
            self.x.u(),
            self.x.v(),
            self.y.u(),
            self.y.v(),
            self.z.u(),
            self.z.v(),
        ]
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x=({}) y=({}) z=({})", self.x, self.y, self.z)
    }
}

/// `a·x^d − y² − z² + x·y·z − c`.
pub fn equation_value(
    a: &QuadInt,
    c: &QuadInt,
    d: u32,
    x: &QuadInt,
    y: &QuadInt,
    z: &QuadInt,
) -> QuadInt {
    a * &x.pow(d) - y * y - z * z + x * y * z - c
}

pub fn verify_witness(field: Field, a: &QuadInt, c: &QuadInt, d: u32, w: &Witness) -> bool {
    [a, c, &w.x, &w.y, &w.z].iter().all(|e| e.field() == field)
        && equation_value(a, c, d, &w.x, &w.y, &w.z).is_zero()
}

/// All solutions in the box, in lexicographic order of
/// `(u_x, v_x, u_y, v_y, u_z, v_z)`.
///
/// Over `Q` the equation is solved for `y` by a perfect-square test on the
/// discriminant of the quadratic; over quadratic fields every tuple is scanned.
pub fn enumerate_solutions(
    field: Field,
    a: &QuadInt,
    c: &QuadInt,
    d: u32,
    search_box: SearchBox,
    even_x_only: bool,
    cost_cap: u128,
) -> Result<Vec<Witness>> {
    if a.is_zero() {
        return domain("a must be nonzero");
    }
    if d == 0 {
        return domain("d must be positive");
    }
    if a.field() != field || c.field() != field {
        return domain("coefficients belong to a different field");
    }
    check_cost(search_box.size(field), cost_cap)?;

    let slices: Vec<Vec<Witness>> = search_box
        .range()
        .into_par_iter()
        .filter(|ux| !even_x_only || ux % 2 == 0)
        .map(|ux| match field {
            Field::Rational => rational_slice(a, c, d, search_box, ux),
            Field::Quadratic(_) => quadratic_slice(field, a, c, d, search_box, ux, even_x_only),
        })
        .collect();
    Ok(slices.into_iter().flatten().collect())
}

/// All `(x, y, z) ∈ Z³` with `x = ux` and `|y|, |z| ≤ B`.
fn rational_slice(a: &QuadInt, c: &QuadInt, d: u32, search_box: SearchBox, ux: i64) -> Vec<Witness> {
    let field = Field::Rational;
    let x = QuadInt::from_int(field, ux);
    // y² − (xz)·y − (a·x^d − c − z²) = 0
    let ax_c = (a * &x.pow(d) - c).u().clone();
    let xb = BigInt::from(ux);
    let mut out = Vec::new();
    for uz in search_box.range() {
        let zb = BigInt::from(uz);
        let lin = &xb * &zb;
        let disc: BigInt = &lin * &lin + (&ax_c - &zb * &zb) * 4;
        if disc.is_negative() {
            continue;
        }
        let root = Roots::sqrt(&disc);
        if &root * &root != disc {
            continue;
        }
        let mut ys: Vec<BigInt> = [&lin - &root, &lin + &root]
            .into_iter()
            .filter(|twice_y: &BigInt| twice_y.is_even())
            .map(|twice_y| twice_y / 2)
            .filter(|y: &BigInt| y.abs() <= BigInt::from(search_box.bound))
            .collect();
        ys.dedup();
        for y in ys {
            out.push(Witness::new(
                x.clone(),
                QuadInt::from_int(field, y),
                QuadInt::from_int(field, zb.clone()),
            ));
        }
    }
    out.sort_by(|p, q| p.key().cmp(&q.key()));
    out
}

type Small = (i128, i128);

fn to_small(x: &QuadInt) -> Option<Small> {
    Some((x.u().to_i128()?, x.v().to_i128()?))
}

/// Checked `k + m·z − z²` in integral-basis coordinates.
fn small_residual(trace: i128, norm: i128, k: Small, m: Small, z: Small, z_sq: Small) -> Option<Small> {
    let vv = m.1.checked_mul(z.1)?;
    let mz_u = m.0.checked_mul(z.0)?.checked_sub(vv.checked_mul(norm)?)?;
    let mz_v = m
        .0
        .checked_mul(z.1)?
        .checked_add(m.1.checked_mul(z.0)?)?
        .checked_add(vv.checked_mul(trace)?)?;
    Some((
        k.0.checked_add(mz_u)?.checked_sub(z_sq.0)?,
        k.1.checked_add(mz_v)?.checked_sub(z_sq.1)?,
    ))
}

fn quadratic_slice(
    field: Field,
    a: &QuadInt,
    c: &QuadInt,
    d: u32,
    search_box: SearchBox,
    ux: i64,
    even_x_only: bool,
) -> Vec<Witness> {
    let omega = QuadInt::omega(field).expect("quadratic field");
    let omega_sq = &omega * &omega;
    // ω² = trace·ω − norm
    let trace = omega_sq.v().to_i128().expect("small");
    let norm = -omega_sq.u().to_i128().expect("small");

    let elems: Vec<QuadInt> = search_box
        .range()
        .flat_map(|u| search_box.range().map(move |v| (u, v)))
        .map(|(u, v)| QuadInt::new(field, u, v).expect("quadratic field"))
        .collect();
    let zs: Vec<(Small, QuadInt, Small)> = elems
        .iter()
        .map(|z| {
            let sq = z * z;
            (to_small(z).expect("box coordinates"), sq.clone(), to_small(&sq).expect("small"))
        })
        .collect();

    let mut out = Vec::new();
    for vx in search_box.range() {
        if even_x_only && vx % 2 != 0 {
            continue;
        }
        let x = QuadInt::new(field, ux, vx).expect("quadratic field");
        let ax_c = a * &x.pow(d) - c;
        for y in &elems {
            let m = &x * y;
            let k = &ax_c - y * y;
            let small = to_small(&m).zip(to_small(&k));
            for ((z_small, z_sq, z_sq_small), z) in zs.iter().zip(&elems) {
                let fast = small.and_then(|(m_s, k_s)| {
                    small_residual(trace, norm, k_s, m_s, *z_small, *z_sq_small)
                });
                let hit = match fast {
                    Some(r) => r == (0, 0),
                    None => (&k + &m * z - z_sq).is_zero(),
                };
                if hit {
                    out.push(Witness::new(x.clone(), y.clone(), z.clone()));
                }
            }
        }
    }
    debug_assert!(out.iter().all(|w| search_box.contains(&w.y)));
    out
}
