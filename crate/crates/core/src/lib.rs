//! Verification toolkit for the generalized fruit Diophantine equation
//! `a·x^d − y² − z² + x·y·z − c = 0` over `Q` and quadratic fields `Q(√t)`.
//!
//! * [`quad_field`]: arithmetic in `O_K`, splitting of 2, residue maps to `Z/2ⁿZ`.
//! * [`obstruction`]: the mod-𝔓² local obstruction for solutions with `2 | x`.
//! * [`search`]: exhaustive box search, independent of the obstruction engine.
//! * [`density`]: square-free sieves and residue-class densities.
//! * [`curves`]: the curves `E_α : y² − αxy = x³ − (α² + 5)` and Nagell–Lutz candidates.

pub mod curves;
pub mod density;
pub mod error;
pub mod obstruction;
pub mod quad_field;
pub mod search;
mod serde_util;

pub use error::{Error, Result};
pub use quad_field::{Field, QuadInt};
