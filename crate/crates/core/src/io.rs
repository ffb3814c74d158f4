//! Versioned JSON documents for algebras, root systems and reports.
//!
//! Floats are rounded to 12 significant digits and fields keep their
//! declaration order, so a fixed input always serializes to the same bytes.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::StructureTensor;
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::roots::{lambda_prime, CharacteristicElement, Family, RootSystem};
use crate::solv::{MetricSolvLieAlgebra, Provenance, RootData, Step};

pub const SCHEMA: &str = "solvcurv/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootEntry {
    pub label: String,
    pub coords: Vec<i32>,
    pub mult: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootDataDoc {
    pub a_omega: Vec<Vec<f64>>,
    pub a_sources: Vec<usize>,
    /// Root label of each n-vector.
    pub n_roots: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<usize>>,
    pub labels: Vec<String>,
    pub dim_a: usize,
    pub dim_n: usize,
    /// `(i, j, k, c)` with `i < j`: `[e_i, e_j]` has component `c` on `e_k`.
    pub structure: Vec<(usize, usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_data: Option<RootDataDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default)]
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub family: String,
    pub params: Vec<usize>,
    pub roots: Vec<RootEntry>,
    pub simple: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<u32>>,
    /// Λ′ as simple-root labels, when a characteristic element was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_prime: Option<Vec<String>>,
}

fn last_z(s: &MetricSolvLieAlgebra) -> Option<CharacteristicElement> {
    s.provenance().steps.iter().rev().find_map(|st| match st {
        Step::Attach { z } => CharacteristicElement::new(z.clone()).ok(),
        _ => None,
    })
}

fn root_entries(rs: &RootSystem, z: Option<&CharacteristicElement>) -> Result<Vec<RootEntry>> {
    let levels = z.map(|z| rs.levels(z)).transpose()?;
    Ok(rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| RootEntry { label: r.root.label.clone(), coords: r.root.coords.clone(), mult: r.mult, level: levels.as_ref().map(|l| l[i]) })
        .collect())
}

pub fn algebra_doc(s: &MetricSolvLieAlgebra) -> Result<AlgebraDoc> {
    let family = s.family();
    let (roots, root_data) = match s.root_data() {
        Some(rd) => {
            let z = last_z(s);
            let roots = root_entries(&rd.system, z.as_ref())?;
            let all = rd.system.positive_roots();
            let doc = RootDataDoc {
                a_omega: rd.a_omega.iter().map(|v| v.iter().copied().map(sig12).collect()).collect(),
                a_sources: rd.a_sources.clone(),
                n_roots: rd.n_roots.iter().map(|&r| all[r].root.label.clone()).collect(),
            };
            (Some(roots), Some(doc))
        }
        None => (None, None),
    };
    Ok(AlgebraDoc {
        family: family.map(|f| f.name().to_string()),
        params: family.map(|f| f.params()),
        labels: s.labels().to_vec(),
        dim_a: s.dim_a(),
        dim_n: s.dim_n(),
        structure: s.structure().triples().into_iter().map(|(i, j, k, v)| (i, j, k, sig12(v))).collect(),
        roots,
        root_data,
        flags: s.current_flags(),
        steps: s.provenance().steps.clone(),
    })
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<MetricSolvLieAlgebra> {
    if doc.labels.len() != doc.dim_a + doc.dim_n {
        return Err(Error::Parse(format!("{} labels for dim_a + dim_n = {}", doc.labels.len(), doc.dim_a + doc.dim_n)));
    }
    let family = match (&doc.family, &doc.params) {
        (Some(name), Some(params)) => Some(Family::new(name, params)?),
        (None, None) => None,
        _ => return Err(Error::Parse("`family` and `params` must be given together".into())),
    };
    let structure = StructureTensor::from_triples(doc.labels.len(), &doc.structure)?;
    let roots = match (&doc.root_data, family) {
        (Some(rd), Some(f)) => {
            let system = RootSystem::new(f)?;
            let n_roots = rd
                .n_roots
                .iter()
                .map(|l| system.index_of_label(l).ok_or_else(|| Error::Parse(format!("`{l}` is not a positive root of {f}"))))
                .collect::<Result<Vec<_>>>()?;
            if rd.a_omega.iter().any(|v| v.len() != system.omega_dim()) {
                return Err(Error::Parse("a_omega rows have the wrong length".into()));
            }
            Some(RootData { system, a_omega: rd.a_omega.clone(), a_sources: rd.a_sources.clone(), n_roots })
        }
        (Some(_), None) => return Err(Error::Parse("root_data needs a family".into())),
        (None, _) => None,
    };
    let provenance = Provenance { family, steps: doc.steps.clone() };
    MetricSolvLieAlgebra::new(doc.labels.clone(), doc.dim_a, structure, roots, provenance)
}

pub fn root_system_doc(rs: &RootSystem, z: Option<&CharacteristicElement>) -> Result<RootSystemDoc> {
    let f = rs.family();
    let lp = match z {
        Some(z) => {
            let simple = rs.simple_roots();
            Some(lambda_prime(rs, z)?.into_iter().map(|i| simple[i].label.clone()).collect())
        }
        None => None,
    };
    Ok(RootSystemDoc {
        family: f.name().to_string(),
        params: f.params(),
        roots: root_entries(rs, z)?,
        simple: rs.simple_roots().iter().map(|r| r.label.clone()).collect(),
        z: z.map(|z| z.coeffs.clone()),
        lambda_prime: lp,
    })
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                *v = serde_json::Number::from_f64(sig12(x)).map(Value::Number).unwrap_or(Value::Null);
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// `value` as a JSON object headed by `"schema"` (and `"kind"`), floats at
/// 12 significant digits.
pub fn to_value<T: Serialize>(kind: &str, value: &T) -> Result<Value> {
    let mut inner = serde_json::to_value(value)?;
    round_floats(&mut inner);
    let mut out = Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    out.insert("kind".into(), Value::String(kind.into()));
    match inner {
        Value::Object(o) => out.extend(o),
        other => {
            out.insert("value".into(), other);
        }
    }
    Ok(Value::Object(out))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(kind: &str, value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&to_value(kind, value)?)?;
    s.push('\n');
    Ok(s)
}

pub fn algebra_to_json(s: &MetricSolvLieAlgebra) -> Result<String> {
    to_json("algebra", &algebra_doc(s)?)
}

/// Reads an algebra document; the `schema` field, when present, must match.
pub fn algebra_from_json(text: &str) -> Result<MetricSolvLieAlgebra> {
    let v: Value = serde_json::from_str(text)?;
    if let Some(schema) = v.get("schema") {
        if schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {schema}, expected \"{SCHEMA}\"")));
        }
    }
    if let Some(kind) = v.get("kind") {
        if kind != "algebra" {
            return Err(Error::Parse(format!("expected an algebra document, got kind {kind}")));
        }
    }
    let doc: AlgebraDoc = serde_json::from_value(v)?;
    algebra_from_doc(&doc)
}
