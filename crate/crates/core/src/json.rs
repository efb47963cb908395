//! Canonical JSON helpers: sorted keys, exact integers, rationals as `"p/q"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

/// Serialize a big integer as a JSON number when it fits in `i64`, else as a decimal string.
pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

pub fn opt_bigint<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => bigint(x, s),
        None => s.serialize_none(),
    }
}

struct Big<'a>(&'a BigInt);

impl Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        bigint(self.0, s)
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    // serde_json's Value map is a BTreeMap without the preserve_order feature
    let v = serde_json::to_value(value).expect("report types serialize infallibly");
    let mut out = serde_json::to_string_pretty(&v).expect("Value serializes infallibly");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct T {
        zeta: u8,
        #[serde(serialize_with = "bigint")]
        alpha: BigInt,
        #[serde(serialize_with = "bigint_vec")]
        list: Vec<BigInt>,
    }

    #[test]
    fn keys_sorted_and_big_values_exact() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let t = T {
            zeta: 1,
            alpha: BigInt::from(81),
            list: vec![huge, BigInt::from(-3)],
        };
        let s = to_canonical_string(&t);
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.contains("\"123456789012345678901234567890\""));
        assert!(s.contains("-3"));
        assert!(s.ends_with("}\n"));
    }
}
