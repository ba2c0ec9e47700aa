//! JSON encoding of rationals and polynomials.
//!
//! Integers travel as decimal strings so nothing is squeezed through 64 bits:
//!
//! ```json
//! {"nvars": 3, "terms": [{"exp": [0, 1, 2], "num": "-1", "den": "1"}]}
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgError, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    num: String,
    den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PolynomialJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

fn parse_int(s: &str) -> Result<BigInt, AlgError> {
    s.trim().parse::<BigInt>().map_err(|_| AlgError::Parse(format!("'{s}' is not an integer")))
}

/// `"n"` or `"n/d"`.
pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgError> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(AlgError::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

impl TryFrom<PolynomialJson> for Polynomial<Rational> {
    type Error = AlgError;

    fn try_from(json: PolynomialJson) -> Result<Self, AlgError> {
        let terms = json
            .terms
            .into_iter()
            .map(|t| {
                let den = parse_int(&t.den)?;
                if den.is_zero() {
                    return Err(AlgError::Parse("zero denominator".into()));
                }
                Ok((t.exp, Rational::new(parse_int(&t.num)?, den)))
            })
            .collect::<Result<Vec<_>, AlgError>>()?;
        Polynomial::from_terms(json.nvars, terms)
    }
}

impl From<&Polynomial<Rational>> for PolynomialJson {
    fn from(p: &Polynomial<Rational>) -> Self {
        PolynomialJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl Serialize for Polynomial<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(deserializer)?;
        Polynomial::try_from(json).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Rational` as a string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Vec<Rational>>` as nested string arrays.
pub mod rational_rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> =
            rows.iter().map(|r| r.iter().map(rational_to_string).collect()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let strings = Vec::<Vec<String>>::deserialize(d)?;
        strings
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;

    #[test]
    fn canonical_encoding() {
        let p: Polynomial<Rational> = parse_polynomial("y^2 - 1/2*x", &["x", "y"]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"nvars":2,"terms":[{"exp":[1,0],"num":"-1","den":"2"},{"exp":[0,2],"num":"1","den":"1"}]}"#
        );
        let back: Polynomial<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn non_canonical_input_is_normalized() {
        let s = r#"{"nvars":1,"terms":[{"exp":[1],"num":"2","den":"4"},{"exp":[1],"num":"1","den":"2"},{"exp":[0],"num":"0","den":"7"}]}"#;
        let p: Polynomial<Rational> = serde_json::from_str(s).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"nvars":1,"terms":[{"exp":[1],"num":"1","den":"1"}]}"#);
    }

    #[test]
    fn rejects_bad_terms() {
        let bad_len = r#"{"nvars":2,"terms":[{"exp":[1],"num":"1","den":"1"}]}"#;
        assert!(serde_json::from_str::<Polynomial<Rational>>(bad_len).is_err());
        let bad_den = r#"{"nvars":1,"terms":[{"exp":[1],"num":"1","den":"0"}]}"#;
        assert!(serde_json::from_str::<Polynomial<Rational>>(bad_den).is_err());
        let bad_num = r#"{"nvars":1,"terms":[{"exp":[1],"num":"1.5","den":"1"}]}"#;
        assert!(serde_json::from_str::<Polynomial<Rational>>(bad_num).is_err());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(rational_to_string(&parse_rational("10/5").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
    }
}
