//! Serde helpers: integers are written as JSON numbers when they fit in 64
//! bits and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn big_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn big_ints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Wrapped(x))?;
    }
    seq.end()
}

struct Wrapped<'a>(&'a BigInt);

impl serde::Serialize for Wrapped<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        big_int(self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(serde::Serialize)]
    struct Probe {
        #[serde(serialize_with = "big_ints")]
        xs: Vec<BigInt>,
    }

    #[test]
    fn large_values_become_strings() {
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let p = Probe {
            xs: vec![BigInt::from(-7), big],
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"xs":[-7,"-123456789012345678901234567890"]}"#
        );
    }
}
