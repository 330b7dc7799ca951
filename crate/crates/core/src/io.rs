//! JSON encodings of fields, elements, curves, planes, point sets and forms.
//!
//! Finite field elements are coefficient arrays `[a0, ..., a_{m-1}]` (a bare
//! integer is accepted on input); rationals are strings `"num/den"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::curves::TernaryForm;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::geometry::{ParamCurve, Plane, PointConfiguration, ProjPoint};
use crate::poly::UniPoly;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn field_to_json(field: &Field) -> Value {
    match field.modulus() {
        Some(m) => json!({
            "type": "finite",
            "p": field.characteristic(),
            "m": field.degree(),
            "modulus": m,
        }),
        None => json!({"type": "rational"}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v.get("type").and_then(Value::as_str) {
        Some("rational") => Ok(Field::rational()),
        Some("finite") => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field needs integer p"))?;
            let m = v.get("m").and_then(Value::as_u64).unwrap_or(1) as usize;
            match v.get("modulus") {
                None | Some(Value::Null) => crate::field::make_extension(p, m),
                Some(Value::Array(cs)) => {
                    let modulus = cs
                        .iter()
                        .map(|c| c.as_u64().ok_or_else(|| bad("modulus coefficients must be integers")))
                        .collect::<Result<Vec<u64>>>()?;
                    if modulus.len() != m + 1 {
                        return Err(Error::InvalidModulus(m));
                    }
                    Field::with_modulus(p, modulus)
                }
                Some(_) => Err(bad("modulus must be an array")),
            }
        }
        _ => Err(bad("field type must be \"finite\" or \"rational\"")),
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    match x.coeffs() {
        Some(c) => json!(c),
        None => {
            let q = x.as_rational().unwrap();
            Value::String(format!("{}/{}", q.numer(), q.denom()))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| bad(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

pub fn element_from_json(field: &Field, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| bad("element out of range"))?;
            Ok(field.from_i64(i))
        }
        Value::Array(cs) => {
            if !field.is_finite() {
                return Err(bad("rational elements are strings"));
            }
            if cs.len() > field.degree() {
                return Err(bad(format!("element has more than {} coefficients", field.degree())));
            }
            let c = cs
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| bad("coefficients must be integers")))
                .collect::<Result<Vec<i64>>>()?;
            field.from_coeffs(&c)
        }
        Value::String(s) => {
            let q = parse_rational(s)?;
            field.from_rational(q)
        }
        _ => Err(bad("unrecognized element")),
    }
}

fn elements_from_json(field: &Field, v: &Value) -> Result<Vec<FieldElement>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of elements"))?
        .iter()
        .map(|e| element_from_json(field, e))
        .collect()
}

fn field_of(v: &Value) -> Result<Field> {
    field_from_json(v.get("field").ok_or_else(|| bad("missing \"field\""))?)
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(element_to_json).collect())
}

pub fn curve_to_json(c: &ParamCurve) -> Value {
    json!({
        "field": field_to_json(c.field()),
        "param": c
            .components()
            .iter()
            .map(|p| p.coeffs().iter().map(element_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn curve_from_json(v: &Value) -> Result<ParamCurve> {
    let field = field_of(v)?;
    let comps = v
        .get("param")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("curve needs \"param\""))?
        .iter()
        .map(|c| Ok(UniPoly::new(&field, elements_from_json(&field, c)?)))
        .collect::<Result<Vec<_>>>()?;
    let label = v.get("label").and_then(Value::as_str).unwrap_or("curve");
    ParamCurve::new(&field, comps, label)
}

pub fn plane_to_json(h: &Plane) -> Value {
    json!({
        "field": field_to_json(h.field()),
        "duals": h.duals().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn plane_from_json(v: &Value) -> Result<Plane> {
    let field = field_of(v)?;
    Plane::new(elements_from_json(
        &field,
        v.get("duals").ok_or_else(|| bad("plane needs \"duals\""))?,
    )?)
}

pub fn points_to_json(x: &PointConfiguration) -> Value {
    json!({
        "field": field_to_json(x.field()),
        "points": x.points().iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

pub fn points_from_json(v: &Value) -> Result<PointConfiguration> {
    let field = field_of(v)?;
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("point set needs \"points\""))?
        .iter()
        .map(|p| ProjPoint::new(elements_from_json(&field, p)?))
        .collect::<Result<Vec<_>>>()?;
    let label = v.get("label").and_then(Value::as_str).unwrap_or("input");
    PointConfiguration::new(&field, pts, label)
}

pub fn form_to_json(f: &TernaryForm) -> Value {
    let coeffs: Map<String, Value> = f
        .terms()
        .into_iter()
        .map(|(m, c)| (format!("{},{},{}", m[0], m[1], m[2]), element_to_json(&c)))
        .collect();
    json!({
        "field": field_to_json(f.field()),
        "degree": f.degree(),
        "coeffs": coeffs,
    })
}

pub fn form_from_json(v: &Value) -> Result<TernaryForm> {
    let field = field_of(v)?;
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("form needs \"degree\""))? as usize;
    let map = v
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("form needs \"coeffs\""))?;
    let mut terms = Vec::with_capacity(map.len());
    for (k, val) in map {
        let e: Vec<usize> = k
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad monomial key {k:?}")))
            })
            .collect::<Result<_>>()?;
        let e: [usize; 3] = e
            .try_into()
            .map_err(|_| bad(format!("monomial key {k:?} needs three exponents")))?;
        terms.push((e, element_from_json(&field, val)?));
    }
    TernaryForm::from_terms(&field, degree, &terms)
}
