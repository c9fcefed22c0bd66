//! Serde adapters writing exact numbers as strings ("p/q" in lowest terms).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `(a, b, …)` with entries as in [`format_rational`].
pub fn format_vector(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("malformed rational {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("malformed rational {s:?}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod rat_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

pub mod rat_columns {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.iter().map(format_rational).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|c| c.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect())
            .collect()
    }
}

/// Integers are accepted as JSON numbers or as decimal strings.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    fn value<E: serde::de::Error>(&self) -> Result<BigInt, E> {
        match self {
            IntRepr::Num(n) => Ok(BigInt::from(*n)),
            IntRepr::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| E::custom(format!("malformed integer {s:?}"))),
        }
    }
}

fn int_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(n) => serde_json::Value::from(n),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

pub mod opt_rat_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<BigRational>>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(rows) => super::rat_columns::serialize(rows, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<BigRational>>>, D::Error> {
        let v = Option::<Vec<Vec<String>>>::deserialize(d)?;
        v.map(|rows| {
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect())
                .collect()
        })
        .transpose()
    }
}

pub mod int_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(int_json))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<IntRepr>::deserialize(d)?;
        v.iter().map(IntRepr::value).collect()
    }
}

pub mod int_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let v = Vec::<Vec<IntRepr>>::deserialize(d)?;
        v.iter().map(|r| r.iter().map(IntRepr::value).collect()).collect()
    }
}
