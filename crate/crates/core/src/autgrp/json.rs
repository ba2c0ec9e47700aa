//! `ProjMap`: a row-major array of rational strings, e.g.
//! `["0","1","0","1","0","0","0","0","1"]`; nested rows are accepted on input.
//!
//! `BezoutSystem`: `{"nvars", "var_names", "generators", "sample_points", "degree"}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BezoutSystem, ProjMap};
use crate::exactalg::json::{parse_rational, rational_rows, rational_to_string};
use crate::exactalg::Polynomial;
use crate::Rational;

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Flat(Vec<String>),
    Rows(Vec<Vec<String>>),
}

impl Serialize for ProjMap<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let flat: Vec<String> = self.entries().iter().map(rational_to_string).collect();
        flat.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjMap<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows: Vec<Vec<String>> = match MatrixJson::deserialize(deserializer)? {
            MatrixJson::Rows(rows) => rows,
            MatrixJson::Flat(flat) => {
                let dim = (flat.len() as f64).sqrt().round() as usize;
                if dim == 0 || dim * dim != flat.len() {
                    return Err(D::Error::custom(format!(
                        "matrix with {} entries is not square",
                        flat.len()
                    )));
                }
                flat.chunks(dim).map(<[String]>::to_vec).collect()
            }
        };
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        ProjMap::new(rows).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    nvars: usize,
    var_names: Vec<String>,
    generators: Vec<Polynomial<Rational>>,
    #[serde(with = "rational_rows")]
    sample_points: Vec<Vec<Rational>>,
    degree: u32,
}

impl Serialize for BezoutSystem<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SystemJson {
            nvars: self.nvars(),
            var_names: self.var_names.clone(),
            generators: self.generators.clone(),
            sample_points: self.sample_points.clone(),
            degree: self.degree,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BezoutSystem<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = SystemJson::deserialize(deserializer)?;
        if json.nvars != json.var_names.len() {
            return Err(D::Error::custom(format!(
                "nvars is {} but {} variable names are given",
                json.nvars,
                json.var_names.len()
            )));
        }
        BezoutSystem::new(json.var_names, json.generators, json.sample_points, json.degree)
            .map_err(D::Error::custom)
    }
}
