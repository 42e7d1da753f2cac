//! JSON encodings of every value the CLI exchanges. Field elements are
//! encoded canonically: prime-field residues as integers, extension
//! elements as little-endian coefficient arrays with trailing zeros
//! trimmed, rationals as decimal strings (`n` or `n/d`, reduced).
//! Polynomials and matrices carry their field descriptor next to the
//! data, so parsing is always done against a known field.

use serde_json::{json, Map, Value};

use crate::coherent::{CoherentFunctor, FunctorData, NuVector};
use crate::equivalence::FExtWitness;
use crate::error::{Error, Result};
use crate::field::{rational_from_string, rational_to_string, Field, FieldDescriptor, FieldElem};
use crate::k0::{K0Class, NilK0Class};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::torsion::{DivisorClass, JordanHom, TorsionModule};

pub fn field_to_json(field: &Field) -> Value {
    serde_json::to_value(field.descriptor()).expect("descriptor serializes")
}

pub fn field_from_json(value: &Value) -> Result<Field> {
    let desc: FieldDescriptor = serde_json::from_value(value.clone())
        .map_err(|e| Error::Parse(format!("bad field descriptor: {e}")))?;
    Field::make(desc)
}

pub fn elem_to_json(field: &Field, a: &FieldElem) -> Value {
    match a {
        FieldElem::Fp(x) => json!(x),
        FieldElem::Ext(v) => {
            let mut coeffs: Vec<u64> = v.clone();
            while coeffs.last() == Some(&0) {
                coeffs.pop();
            }
            let _ = field;
            json!(coeffs)
        }
        FieldElem::Rat(r) => json!(rational_to_string(r)),
    }
}

pub fn elem_from_json(field: &Field, value: &Value) -> Result<FieldElem> {
    match field.descriptor() {
        FieldDescriptor::Prime { p } => {
            let n = value
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("expected integer residue, got {value}")))?;
            let _ = p;
            Ok(field.from_int(n))
        }
        FieldDescriptor::Extension { p, modulus } => {
            let k = modulus.len() - 1;
            let raw: Vec<i64> = match value {
                Value::Array(items) => items
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::Parse(format!("bad coefficient {x}")))
                    })
                    .collect::<Result<_>>()?,
                Value::Number(_) => vec![value.as_i64().unwrap()],
                _ => {
                    return Err(Error::Parse(format!(
                        "expected coefficient array, got {value}"
                    )))
                }
            };
            if raw.len() > k {
                return Err(Error::Parse(format!(
                    "coefficient vector longer than extension degree {k}"
                )));
            }
            let mut v = vec![0u64; k];
            for (i, c) in raw.iter().enumerate() {
                v[i] = c.rem_euclid(*p as i64) as u64;
            }
            Ok(FieldElem::Ext(v))
        }
        FieldDescriptor::Rationals => match value {
            Value::String(s) => Ok(FieldElem::Rat(rational_from_string(s)?)),
            Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("non-integer number {n}")))?;
                Ok(field.from_int(i))
            }
            _ => Err(Error::Parse(format!("expected rational, got {value}"))),
        },
    }
}

/// Little-endian coefficient array.
pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| elem_to_json(p.field(), c))
            .collect(),
    )
}

pub fn poly_from_json(field: &Field, value: &Value) -> Result<Poly> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected coefficient array, got {value}")))?;
    let coeffs = items
        .iter()
        .map(|v| elem_from_json(field, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field.clone(), coeffs))
}

pub fn matrix_rows_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| elem_to_json(m.field(), m.at(i, j)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_rows_from_json(field: &Field, value: &Value) -> Result<Mat> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let mut parsed: Vec<Vec<FieldElem>> = vec![];
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        parsed.push(
            cells
                .iter()
                .map(|c| elem_from_json(field, c))
                .collect::<Result<_>>()?,
        );
    }
    let cols = parsed.first().map(|r| r.len()).unwrap_or(0);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(Mat::from_rows(field.clone(), parsed))
}

/// `{"field": ..., "matrix": [[...], ...]}`
pub fn module_to_json(m: &TorsionModule) -> Value {
    json!({
        "field": field_to_json(m.field()),
        "matrix": matrix_rows_to_json(m.mat()),
    })
}

pub fn module_from_json(value: &Value) -> Result<TorsionModule> {
    let field = field_from_json(
        value
            .get("field")
            .ok_or_else(|| Error::Parse("missing \"field\"".into()))?,
    )?;
    let mat = matrix_rows_from_json(
        &field,
        value
            .get("matrix")
            .ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?,
    )?;
    if !mat.is_square() {
        return Err(Error::Parse(format!(
            "matrix must be square, got {}x{}",
            mat.rows(),
            mat.cols()
        )));
    }
    TorsionModule::new(mat)
}

/// `[{"m": [...], "r": int, "mult": int}, ...]`
pub fn divisor_class_to_json(class: &DivisorClass) -> Value {
    Value::Array(
        class
            .entries()
            .map(|(m, r, mult)| {
                json!({
                    "m": poly_to_json(m),
                    "r": r,
                    "mult": mult,
                })
            })
            .collect(),
    )
}

pub fn divisor_class_from_json(field: &Field, value: &Value) -> Result<DivisorClass> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::Parse("divisor class must be an array".into()))?;
    let mut out = DivisorClass::empty();
    for item in items {
        let m = poly_from_json(
            field,
            item.get("m")
                .ok_or_else(|| Error::Parse("missing \"m\"".into()))?,
        )?;
        let r = item
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing \"r\"".into()))? as u32;
        let mult = item
            .get("mult")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing \"mult\"".into()))? as u32;
        out.insert(m, r, mult);
    }
    Ok(out)
}

/// `{"field": ..., "entries": [{"m": [...], "r": int, "coeff": int}]}`
pub fn k0_to_json(class: &K0Class) -> Value {
    json!({
        "field": field_to_json(class.field()),
        "entries": Value::Array(
            class
                .entries()
                .map(|(m, r, coeff)| {
                    json!({"m": poly_to_json(m), "r": r, "coeff": coeff})
                })
                .collect(),
        ),
    })
}

pub fn nil_k0_to_json(class: &NilK0Class) -> Value {
    Value::Array(
        class
            .entries()
            .map(|(r, c)| json!({"r": r, "coeff": c}))
            .collect(),
    )
}

pub fn nu_to_json(nu: &NuVector) -> Value {
    Value::Array(
        nu.entries()
            .map(|(r, n)| json!({"r": r, "mult": n}))
            .collect(),
    )
}

/// `{"field": ..., "source": [...], "target": [...], "beta": [[{"p": [...]}, ...], ...]}`
pub fn presentation_to_json(f: &CoherentFunctor) -> Value {
    json!({
        "field": field_to_json(f.field()),
        "source": f.source_blocks(),
        "target": f.target_blocks(),
        "beta": Value::Array(
            f.beta()
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|h| json!({"p": poly_to_json(&h.p)}))
                            .collect(),
                    )
                })
                .collect(),
        ),
    })
}

pub fn presentation_from_json(value: &Value) -> Result<CoherentFunctor> {
    let field = field_from_json(
        value
            .get("field")
            .ok_or_else(|| Error::Parse("missing \"field\"".into()))?,
    )?;
    let blocks = |key: &str| -> Result<Vec<usize>> {
        value
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("missing \"{key}\"")))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| Error::Parse(format!("bad block size {v}")))
            })
            .collect()
    };
    let source = blocks("source")?;
    let target = blocks("target")?;
    let beta_rows = value
        .get("beta")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"beta\"".into()))?;
    if beta_rows.len() != target.len() {
        return Err(Error::Parse("beta must have one row per target block".into()));
    }
    let mut beta = vec![];
    for (i, row) in beta_rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse("beta row must be an array".into()))?;
        if cells.len() != source.len() {
            return Err(Error::Parse(
                "beta row must have one entry per source block".into(),
            ));
        }
        let mut out_row = vec![];
        for (j, cell) in cells.iter().enumerate() {
            let p = poly_from_json(
                &field,
                cell.get("p")
                    .ok_or_else(|| Error::Parse("missing \"p\" in beta entry".into()))?,
            )?;
            let h = JordanHom {
                s: source[j],
                r: target[i],
                p,
            };
            h.validate()?;
            out_row.push(h);
        }
        beta.push(out_row);
    }
    CoherentFunctor::new(field, source, target, beta)
}

pub fn functor_data_to_json(data: &FunctorData) -> Value {
    let levels: Vec<Value> = (1..=data.s_max())
        .map(|s| {
            json!({
                "s": s,
                "dim": data.dim_at(s),
                "t": matrix_rows_to_json(data.t_map(s)),
                "u": matrix_rows_to_json(data.u_map(s)),
                "d": matrix_rows_to_json(data.d_map(s)),
            })
        })
        .collect();
    json!({
        "s_max": data.s_max(),
        "levels": levels,
    })
}

pub fn witness_to_json(w: &FExtWitness) -> Value {
    json!({
        "source_field": field_to_json(w.source.field()),
        "source": matrix_rows_to_json(w.source.mat()),
        "target_field": field_to_json(&w.target_field),
        "target": matrix_rows_to_json(w.target.mat()),
        "unit": matrix_rows_to_json(&w.unit_matrix),
        "counit": matrix_rows_to_json(&w.counit_matrix),
    })
}

/// Stable pretty-printing with a trailing newline; object keys come from
/// insertion order, which is deterministic everywhere in this crate.
pub fn to_stable_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Sort an object's keys recursively (used for report hashing in tests).
pub fn sort_keys(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut sorted = Map::new();
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            for k in keys {
                sorted.insert(k.clone(), sort_keys(&map[k]));
            }
            Value::Object(sorted)
        }
        Value::Array(items) => Value::Array(items.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}
