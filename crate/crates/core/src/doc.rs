//! JSON system documents: either an explicit Gram matrix (numbers or
//! exact "p/q" strings) or a Coxeter label matrix, optional linear
//! relations among the simple roots, and a transverse-form choice.

use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::projective::{custom_form, transverse_form, TransverseForm, TransverseMode};
use crate::scalar::Scalar;
use crate::system::RootSystem;
use num_traits::One;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq)]
pub enum TransverseSpec {
    Sum,
    Sphere,
    Custom(Vec<Scalar>),
}

#[derive(Clone, Debug)]
pub struct SystemDocument {
    pub gram: Vec<Vec<Scalar>>,
    pub relations: Vec<Vec<Scalar>>,
    pub transverse: TransverseSpec,
}

fn schema(key: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        key: key.to_string(),
        message: message.into(),
    }
}

/// A scalar entry: integer, float, or exact "p/q" string.
fn parse_scalar(v: &Value, key: &str) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_int(i))
            } else {
                Ok(Scalar::Float(n.as_f64().ok_or_else(|| {
                    schema(key, "number out of range")
                })?))
            }
        }
        Value::String(s) => {
            Scalar::parse_ratio(s).ok_or_else(|| schema(key, format!("not a rational: {s:?}")))
        }
        other => Err(schema(key, format!("expected number or \"p/q\", got {other}"))),
    }
}

fn parse_matrix(v: &Value, key: &str) -> Result<Vec<Vec<Scalar>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| schema(key, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| schema(&format!("{key}[{i}]"), "expected an array"))?;
        let mut r = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            r.push(parse_scalar(cell, &format!("{key}[{i}][{j}]"))?);
        }
        out.push(r);
    }
    Ok(out)
}

/// Exact value of -cos(pi/m) where it is rational, float otherwise.
fn bond_weight(m: u64) -> Scalar {
    match m {
        2 => Scalar::zero(),
        3 => Scalar::from_ratio(-1, 2),
        _ => Scalar::Float(-(std::f64::consts::PI / m as f64).cos()),
    }
}

/// A label entry: integer order >= 2, "inf", or an explicit weight
/// (negative number or "p/q" string <= -1) for unbounded bonds.
fn parse_label(v: &Value, key: &str) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_u64() {
                if i < 2 {
                    return Err(schema(key, format!("label {i} is below 2")));
                }
                return Ok(bond_weight(i));
            }
            let f = n
                .as_f64()
                .ok_or_else(|| schema(key, "number out of range"))?;
            if f <= -1.0 {
                return Ok(Scalar::Float(f));
            }
            Err(schema(key, format!("label {f} is neither an integer >= 2 nor a weight <= -1")))
        }
        Value::String(s) if s == "inf" => Ok(Scalar::from_int(-1)),
        Value::String(s) => {
            let w = Scalar::parse_ratio(s)
                .ok_or_else(|| schema(key, format!("not \"inf\" or a rational: {s:?}")))?;
            if w.to_f64() <= -1.0 {
                Ok(w)
            } else {
                Err(schema(key, format!("weight {s} is not <= -1")))
            }
        }
        other => Err(schema(key, format!("expected label or weight, got {other}"))),
    }
}

pub fn parse_system(text: &str) -> Result<SystemDocument> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("", "document must be a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "gram" | "labels" | "relations" | "transverse") {
            return Err(schema(key, "unknown key"));
        }
    }
    let gram = match (obj.get("gram"), obj.get("labels")) {
        (Some(_), Some(_)) => {
            return Err(schema("gram", "gram and labels are mutually exclusive"))
        }
        (None, None) => return Err(schema("gram", "one of gram or labels is required")),
        (Some(g), None) => parse_matrix(g, "gram")?,
        (None, Some(l)) => {
            let rows = l
                .as_array()
                .ok_or_else(|| schema("labels", "expected an array of rows"))?;
            let mut out = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let cells = row
                    .as_array()
                    .ok_or_else(|| schema(&format!("labels[{i}]"), "expected an array"))?;
                let mut r = Vec::with_capacity(cells.len());
                for (j, cell) in cells.iter().enumerate() {
                    let key = format!("labels[{i}][{j}]");
                    if i == j {
                        if cell.as_u64() != Some(0) {
                            return Err(schema(&key, "diagonal label must be 0"));
                        }
                        r.push(Scalar::one());
                    } else {
                        r.push(parse_label(cell, &key)?);
                    }
                }
                out.push(r);
            }
            out
        }
    };
    let relations = match obj.get("relations") {
        None => Vec::new(),
        Some(v) => parse_matrix(v, "relations")?,
    };
    let transverse = match obj.get("transverse") {
        None => TransverseSpec::Sum,
        Some(Value::String(s)) if s == "sum" => TransverseSpec::Sum,
        Some(Value::String(s)) if s == "sphere" => TransverseSpec::Sphere,
        Some(Value::Array(cells)) => {
            let mut c = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                c.push(parse_scalar(cell, &format!("transverse[{j}]"))?);
            }
            TransverseSpec::Custom(c)
        }
        Some(other) => {
            return Err(schema(
                "transverse",
                format!("expected \"sum\", \"sphere\" or a coefficient list, got {other}"),
            ))
        }
    };
    Ok(SystemDocument {
        gram,
        relations,
        transverse,
    })
}

/// Realizes the document: validated system plus its transverse form.
pub fn build(doc: &SystemDocument) -> Result<(RootSystem, TransverseForm)> {
    let gram = GramMatrix::new(doc.gram.clone())?;
    let system = RootSystem::realize(gram, doc.relations.clone())?;
    let form = match &doc.transverse {
        TransverseSpec::Sum => transverse_form(&system, TransverseMode::Sum)?,
        TransverseSpec::Sphere => transverse_form(&system, TransverseMode::Sphere)?,
        TransverseSpec::Custom(c) => custom_form(&system, c.clone())?,
    };
    Ok((system, form))
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(r) => {
            if r.denom().is_one() {
                if let Ok(i) = i64::try_from(r.numer().clone()) {
                    return Value::Number(i.into());
                }
            }
            Value::String(format!("{}/{}", r.numer(), r.denom()))
        }
        Scalar::Float(f) => serde_json::json!(f),
    }
}

pub fn serialize_document(doc: &SystemDocument) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert(
        "gram".into(),
        Value::Array(
            doc.gram
                .iter()
                .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
                .collect(),
        ),
    );
    if !doc.relations.is_empty() {
        obj.insert(
            "relations".into(),
            Value::Array(
                doc.relations
                    .iter()
                    .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
                    .collect(),
            ),
        );
    }
    match &doc.transverse {
        TransverseSpec::Sum => {}
        TransverseSpec::Sphere => {
            obj.insert("transverse".into(), Value::String("sphere".into()));
        }
        TransverseSpec::Custom(c) => {
            obj.insert(
                "transverse".into(),
                Value::Array(c.iter().map(scalar_to_json).collect()),
            );
        }
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_with_rational_strings() {
        let doc = parse_system(r#"{"gram": [[1, "-3/2"], ["-3/2", 1]]}"#).unwrap();
        assert_eq!(doc.gram[0][1], Scalar::from_ratio(-3, 2));
        assert!(doc.gram.iter().flatten().all(Scalar::is_exact));
        let (sys, _) = build(&doc).unwrap();
        assert_eq!(sys.rank(), 2);
        assert!(sys.is_exact());
    }

    #[test]
    fn labels_to_gram() {
        let doc = parse_system(r#"{"labels": [[0,3,3],[3,0,4],[3,4,0]]}"#).unwrap();
        assert_eq!(doc.gram[0][1], Scalar::from_ratio(-1, 2));
        let g13 = doc.gram[1][2].to_f64();
        assert!((g13 + 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(!doc.gram[1][2].is_exact());
        let doc = parse_system(r#"{"labels": [[0,"inf"],["inf",0]]}"#).unwrap();
        assert_eq!(doc.gram[0][1], Scalar::from_int(-1));
        let doc = parse_system(r#"{"labels": [[0,"-3/2"],["-3/2",0]]}"#).unwrap();
        assert_eq!(doc.gram[0][1], Scalar::from_ratio(-3, 2));
    }

    #[test]
    fn axiom_violation_surfaces() {
        let doc = parse_system(r#"{"gram": [[1,-0.7],[-0.7,1]]}"#).unwrap();
        assert!(matches!(build(&doc), Err(Error::Axiom(_))));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(
            parse_system(r#"{"gram": [[1]], "labels": [[0]]}"#),
            Err(Error::Schema { .. })
        ));
        assert!(matches!(parse_system("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_system(r#"{"labels": [[0,1],[1,0]]}"#),
            Err(Error::Schema { .. })
        ));
        assert!(matches!(
            parse_system(r#"{"gram": [[1,-1],[-1,1]], "bogus": 1}"#),
            Err(Error::Schema { .. })
        ));
    }

    #[test]
    fn round_trip() {
        for text in [
            r#"{"gram": [[1, "-3/2"], ["-3/2", 1]]}"#,
            r#"{"gram": [[1,-1],[-1,1]], "transverse": "sum"}"#,
            r#"{"gram": [[1,-2,-2],[-2,1,-2],[-2,-2,1]], "transverse": [1,1,1]}"#,
        ] {
            let doc = parse_system(text).unwrap();
            let doc2 = parse_system(&serialize_document(&doc)).unwrap();
            assert_eq!(doc.gram, doc2.gram);
            assert_eq!(doc.relations, doc2.relations);
            assert_eq!(doc.transverse, doc2.transverse);
        }
    }

    #[test]
    fn relations_pass_through() {
        let text = r#"{"gram": [[1,-1,-3,-1],[-1,1,-1,-3],[-3,-1,1,-1],[-1,-3,-1,1]],
                       "relations": [[1,-1,1,-1]]}"#;
        let doc = parse_system(text).unwrap();
        let (sys, _) = build(&doc).unwrap();
        assert_eq!(sys.ambient_dim(), 3);
    }
}
