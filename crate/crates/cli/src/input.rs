//! Loading of forms, maps, fields and points from files or inline text.

use std::path::Path;

use folaut::exactalg::json::parse_rational;
use folaut::exactalg::{default_var_names, parse_polynomial};
use folaut::localfol::LocalFoliation;
use folaut::symforms::VectorField;
use folaut::{Form, Local, Map, Poly, Rational};
use serde_json::Value;

use crate::Failure;

/// Inline JSON when the argument starts with `[` or `{`, else a file path.
fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| Failure::input("io", format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input("malformed_json", format!("{arg}: {e}")))
}

fn schema(what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::input("schema_violation", format!("{what}: {e}"))
}

/// A form checked for shape only.
pub fn raw_form(arg: &str) -> Result<Form, Failure> {
    serde_json::from_value(read_json(arg)?).map_err(|e| schema("form", e))
}

/// A form satisfying every web invariant.
pub fn form(arg: &str) -> Result<Form, Failure> {
    let w = raw_form(arg)?;
    w.validate()?;
    Ok(w)
}

pub fn map(arg: &str) -> Result<Map, Failure> {
    let value = read_json(arg)?;
    let rows = matrix_rows(&value)?;
    Ok(Map::new(rows)?)
}

fn rational(v: &Value) -> Result<Rational, Failure> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| schema("entry", e)),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| schema("entry", e)),
        other => Err(schema("entry", format!("{other} is not a rational"))),
    }
}

/// Square matrix, flat row-major or as nested rows, entries as strings or integers.
pub fn matrix_rows(value: &Value) -> Result<Vec<Vec<Rational>>, Failure> {
    let Value::Array(items) = value else {
        return Err(schema("matrix", "expected an array"));
    };
    if items.iter().all(Value::is_array) {
        return items
            .iter()
            .map(|row| row.as_array().unwrap().iter().map(rational).collect())
            .collect();
    }
    let flat: Vec<Rational> = items.iter().map(rational).collect::<Result<_, _>>()?;
    let dim = (flat.len() as f64).sqrt().round() as usize;
    if dim == 0 || dim * dim != flat.len() {
        return Err(Failure::input("not_square", format!("{} entries do not form a square matrix", flat.len())));
    }
    Ok(flat.chunks(dim).map(<[Rational]>::to_vec).collect())
}

/// A 2×2 matrix that may be singular, for linear parts.
pub fn matrix2(arg: &str) -> Result<[[Rational; 2]; 2], Failure> {
    let rows = matrix_rows(&read_json(arg)?)?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(Failure::input("not_square", "linear part must be 2×2"));
    }
    let [r0, r1] = [&rows[0], &rows[1]];
    Ok([[r0[0].clone(), r0[1].clone()], [r1[0].clone(), r1[1].clone()]])
}

fn local_poly(v: &Value) -> Result<Poly, Failure> {
    match v {
        Value::String(s) => Ok(parse_polynomial(s, &["x", "y"]).map_err(folaut::localfol::LocalError::from)?),
        other => serde_json::from_value(other.clone()).map_err(|e| schema("local coefficient", e)),
    }
}

pub fn local(arg: &str) -> Result<Local, Failure> {
    let value = read_json(arg)?;
    let (Some(a), Some(b)) = (value.get("a"), value.get("b")) else {
        return Err(schema("local foliation", "expected keys \"a\" and \"b\""));
    };
    Ok(LocalFoliation::new(local_poly(a)?, local_poly(b)?)?)
}

/// JSON array of polynomials (objects or expressions), or `"p0 d/dx + ..."`.
pub fn field(arg: &str, nvars: usize) -> Result<VectorField<Rational>, Failure> {
    let trimmed = arg.trim_start();
    let from_json = trimmed.starts_with('[') || (!trimmed.contains("d/d") && Path::new(arg).is_file());
    if !from_json {
        return Ok(VectorField::parse(nvars, arg)?);
    }
    let Value::Array(items) = read_json(arg)? else {
        return Err(schema("vector field", "expected an array"));
    };
    let names = default_var_names(nvars);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let components = items
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(parse_polynomial(s, &refs).map_err(folaut::symforms::FormError::from)?),
            other => serde_json::from_value(other.clone()).map_err(|e| schema("vector field", e)),
        })
        .collect::<Result<Vec<Poly>, Failure>>()?;
    Ok(VectorField::new(components)?)
}

/// `"1,0,0"`.
pub fn point(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|c| parse_rational(c.trim()).map_err(|e| Failure::input("malformed_point", format!("'{text}': {e}"))))
        .collect()
}

/// `"p;q"`.
pub fn line(text: &str) -> Result<(Vec<Rational>, Vec<Rational>), Failure> {
    match text.split(';').collect::<Vec<_>>().as_slice() {
        [p, q] => Ok((point(p)?, point(q)?)),
        _ => Err(Failure::input("malformed_line", format!("expected 'p;q', got '{text}'"))),
    }
}

pub enum Points {
    Count(usize),
    List(Vec<Vec<Rational>>),
}

/// A count of default sample points, or `"p1;p2;..."`.
pub fn points(text: &str) -> Result<Points, Failure> {
    if let Ok(n) = text.trim().parse::<usize>() {
        return Ok(Points::Count(n));
    }
    Ok(Points::List(text.split(';').map(point).collect::<Result<_, _>>()?))
}

pub fn integer_list(text: &str) -> Result<Vec<num_bigint::BigUint>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::input("malformed_number", format!("'{s}' is not a non-negative integer")))
        })
        .collect()
}
