//! JSON module format: `{algebra, basis: [{label, degree}], actions: {x1: [[..]], sigma1: .., pi: ..}}`
//! with rational entries written as `"p/q"` strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{gen_name, parse_gen_name, verify_module, GradedModule};
use crate::algebra::{AlgebraId, Engine};
use crate::error::{Error, Result};
use crate::exactlin::{parse_scalar, Matrix, Scalar};
use crate::quiver::VSeq;

pub fn module_to_json(m: &GradedModule) -> Value {
    let basis: Vec<Value> = m.labels().iter().zip(m.degrees()).map(|(l, d)| json!({"label": l, "degree": d})).collect();
    let mut actions = Map::new();
    for (g, mat) in m.actions() {
        let rows: Vec<Value> =
            mat.to_dense().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect();
        actions.insert(gen_name(*g), Value::Array(rows));
    }
    json!({"algebra": m.algebra(), "basis": basis, "actions": actions})
}

fn field<'a>(v: &'a Value, name: &str, at: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("{at}: missing field `{name}`")))
}

/// Parses, validates and verifies a module; errors name the offending location.
pub fn module_from_json(engine: &Engine, v: &Value) -> Result<GradedModule> {
    let alg: AlgebraId = serde_json::from_value(field(v, "algebra", "module")?.clone())
        .map_err(|e| Error::Parse(format!("module.algebra: {e}")))?;
    alg.validate().map_err(|e| Error::Invalid(format!("module.algebra: {e}")))?;
    let basis = field(v, "basis", "module")?.as_array().ok_or_else(|| Error::Parse("module.basis: expected an array".into()))?;
    let mut labels = Vec::with_capacity(basis.len());
    let mut degrees = Vec::with_capacity(basis.len());
    for (j, b) in basis.iter().enumerate() {
        let at = format!("module.basis[{j}]");
        let l: VSeq = serde_json::from_value(field(b, "label", &at)?.clone()).map_err(|e| Error::Parse(format!("{at}.label: {e}")))?;
        let d = field(b, "degree", &at)?.as_i64().ok_or_else(|| Error::Parse(format!("{at}.degree: expected an integer")))?;
        labels.push(VSeq(l.iter().map(|x| alg.cfg.normalize(*x)).collect()));
        degrees.push(d);
    }
    let d = labels.len();
    let acts = field(v, "actions", "module")?.as_object().ok_or_else(|| Error::Parse("module.actions: expected an object".into()))?;
    let mut actions = BTreeMap::new();
    for (name, rows) in acts {
        let at = format!("module.actions.{name}");
        let g = parse_gen_name(name).ok_or_else(|| Error::Parse(format!("{at}: unknown generator")))?;
        let rows = rows.as_array().ok_or_else(|| Error::Parse(format!("{at}: expected a matrix")))?;
        if rows.len() != d {
            return Err(Error::Parse(format!("{at}: {} rows, expected {d}", rows.len())));
        }
        let mut dense: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().filter(|x| x.len() == d).ok_or_else(|| Error::Parse(format!("{at}[{r}]: expected {d} entries")))?;
            let mut out = Vec::with_capacity(d);
            for (c, x) in row.iter().enumerate() {
                let s = match x {
                    Value::String(s) => parse_scalar(s),
                    Value::Number(n) => parse_scalar(&n.to_string()),
                    _ => Err(Error::Parse("expected a rational".into())),
                }
                .map_err(|e| Error::Parse(format!("{at}[{r}][{c}]: {e}")))?;
                out.push(s);
            }
            dense.push(out);
        }
        let mat = if d == 0 { Matrix::zeros(0, 0) } else { Matrix::from_dense(&dense) };
        actions.insert(g, mat);
    }
    let m = GradedModule::new(alg, labels, degrees, actions)?;
    let rep = verify_module(engine, &m);
    if !rep.ok() {
        return Err(Error::Invalid(format!("module fails verification: {}", rep.failures[..rep.failures.len().min(3)].join("; "))));
    }
    Ok(m)
}
