//! Serde helpers: integers as JSON numbers when they fit, strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

pub(crate) fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.collect_str(v),
    }
}
