//! JSON encoding of big integers: a number when it fits in 64 bits, a
//! decimal string otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}
