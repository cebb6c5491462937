//! JSON helpers: every integer leaves the process as a decimal string so that
//! arbitrary-precision values survive consumers limited to 53-bit numbers.

use serde::Serializer;
use std::fmt::Display;

pub(crate) fn decimal<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub(crate) fn opt_decimal<T: Display, S: Serializer>(
    value: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
