//! `{"N": 2, "k": 1, "coeffs": [{"dmono": [1,0,0], "poly": <Polynomial>}, ...]}`
//!
//! On input `poly` may also be an infix string such as `"-y*z^2"` in the
//! variables `x, y, z, w` (or `x0..xN`); output always uses the object form.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BinaryForm, FormError, SymForm};
use crate::exactalg::{default_var_names, json::rational_to_string, parse_polynomial, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum PolySource {
    Object(Polynomial<Rational>),
    Expr(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CoeffJson {
    dmono: Vec<u32>,
    poly: PolySource,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SymFormJson {
    #[serde(rename = "N")]
    n: usize,
    k: u32,
    coeffs: Vec<CoeffJson>,
}

impl TryFrom<SymFormJson> for SymForm<Rational> {
    type Error = FormError;

    fn try_from(json: SymFormJson) -> Result<Self, FormError> {
        let names = default_var_names(json.n + 1);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let coeffs = json
            .coeffs
            .into_iter()
            .map(|c| {
                let poly = match c.poly {
                    PolySource::Object(p) => p,
                    PolySource::Expr(s) => parse_polynomial(&s, &refs)?,
                };
                Ok((c.dmono, poly))
            })
            .collect::<Result<Vec<_>, FormError>>()?;
        SymForm::raw(json.n, json.k, coeffs)
    }
}

impl Serialize for SymForm<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SymFormJson {
            n: self.n,
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, p)| CoeffJson { dmono: m.exponents().to_vec(), poly: PolySource::Object(p.clone()) })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Deserializes without validation; call [`SymForm::validate`] afterwards.
impl<'de> Deserialize<'de> for SymForm<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = SymFormJson::deserialize(deserializer)?;
        SymForm::try_from(json).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize)]
struct BinaryFormJson {
    degree: u32,
    coefficients: Vec<String>,
}

impl Serialize for BinaryForm<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BinaryFormJson {
            degree: self.degree,
            coefficients: self.coefficients.iter().map(rational_to_string).collect(),
        }
        .serialize(serializer)
    }
}
