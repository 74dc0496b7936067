use serde::{Deserialize, Serialize};

use super::complex::{OrderedComplex, SimplicialMap};
use super::nerve::FiniteGroup;
use crate::error::{Error, Result};
use crate::io::{check_version, parse_json, SCHEMA_VERSION};

/// `{"vertices": [...], "simplices": [[...], ...]}`; the simplex list must be
/// closed under faces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub vertex_map: Vec<usize>,
}

/// `{"table": [[...]], "action": [[...]]?}`; `action[g]` permutes coefficient
/// generators and is only accepted when trivial by the consumers that read it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<i64>>>,
}

fn schema(path: &str, e: Error) -> Error {
    match e {
        Error::Schema { .. } => e,
        other => Error::Schema {
            path: path.to_string(),
            message: other.to_string(),
        },
    }
}

pub fn complex_from_json(text: &str, path: &str) -> Result<OrderedComplex> {
    let f: ComplexFile = parse_json(text, path)?;
    check_version(f.schema_version, path)?;
    OrderedComplex::new(f.vertices, f.simplices).map_err(|e| match e {
        Error::NotClosed { .. } => e,
        other => schema(path, other),
    })
}

pub fn complex_to_json(k: &OrderedComplex) -> String {
    let f = ComplexFile {
        schema_version: Some(SCHEMA_VERSION),
        vertices: k.vertices().to_vec(),
        simplices: k.all_simplices().cloned().collect(),
    };
    crate::io::to_json(&f)
}

pub fn map_from_json(text: &str, path: &str, source: &OrderedComplex, target: &OrderedComplex) -> Result<SimplicialMap> {
    let f: MapFile = parse_json(text, path)?;
    check_version(f.schema_version, path)?;
    SimplicialMap::new(source.clone(), target.clone(), f.vertex_map)
}

pub fn group_from_json(text: &str, path: &str) -> Result<(FiniteGroup, Option<Vec<Vec<i64>>>)> {
    let f: GroupFile = parse_json(text, path)?;
    check_version(f.schema_version, path)?;
    Ok((FiniteGroup::new(f.table)?, f.action))
}
