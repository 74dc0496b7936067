//! Couple files: page-style entries tagged `D` or `E`, plus the matrices of
//! `i`, `j` and `k` keyed by source degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::exact::{ExactCouple, Shifts};
use crate::error::{Error, Result};
use crate::exactlin::{FgGroup, GroupHom, IntMatrix};
use crate::io::{check_version, parse_json, to_json, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Node {
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapName {
    I,
    J,
    K,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRow {
    pub node: Node,
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRow {
    pub map: MapName,
    pub source: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoupleFile {
    pub schema_version: u32,
    pub shifts: Shifts,
    pub periodic: bool,
    pub nodes: Vec<NodeRow>,
    pub maps: Vec<MapRow>,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl CoupleFile {
    pub fn from_couple(c: &ExactCouple) -> Self {
        let mut nodes = Vec::new();
        for (node, groups) in [(Node::D, &c.d), (Node::E, &c.e)] {
            for (m, g) in groups.iter().filter(|(_, g)| !g.is_trivial()) {
                nodes.push(NodeRow {
                    node,
                    degree: *m,
                    rank: g.rank(),
                    torsion: g.torsion().iter().map(ToString::to_string).collect(),
                });
            }
        }
        let mut maps = Vec::new();
        for (name, table) in [(MapName::I, &c.i), (MapName::J, &c.j), (MapName::K, &c.k)] {
            for (m, h) in table.iter().filter(|(_, h)| !h.is_zero()) {
                let a = h.matrix();
                maps.push(MapRow {
                    map: name,
                    source: *m,
                    matrix: (0..a.rows()).map(|r| a.row(r).iter().map(ToString::to_string).collect()).collect(),
                });
            }
        }
        CoupleFile {
            schema_version: SCHEMA_VERSION,
            shifts: c.shifts,
            periodic: c.periodic,
            nodes,
            maps,
        }
    }

    /// Rebuilds the couple; exactness is not checked here.
    pub fn to_couple(&self, path: &str) -> Result<ExactCouple> {
        let mut c = ExactCouple {
            d: BTreeMap::new(),
            e: BTreeMap::new(),
            i: BTreeMap::new(),
            j: BTreeMap::new(),
            k: BTreeMap::new(),
            shifts: self.shifts,
            periodic: self.periodic,
        };
        for row in &self.nodes {
            let torsion = row
                .torsion
                .iter()
                .map(|t| t.parse::<BigInt>().map_err(|_| schema(path, format!("torsion {t:?} is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            let g = FgGroup::new(row.rank, torsion).map_err(|e| schema(path, e.to_string()))?;
            let table = match row.node {
                Node::D => &mut c.d,
                Node::E => &mut c.e,
            };
            if table.insert(row.degree, g).is_some() {
                return Err(schema(path, format!("{:?} listed twice in degree {}", row.node, row.degree)));
            }
        }
        for row in &self.maps {
            let m = row.source;
            let (src, tgt) = match row.map {
                MapName::I => (c.d_group(m), c.d_group(m + c.shifts.i)),
                MapName::J => (c.d_group(m), c.e_group(m + c.shifts.j)),
                MapName::K => (c.e_group(m), c.d_group(m + c.shifts.k)),
            };
            let entries = row
                .matrix
                .iter()
                .flatten()
                .map(|x| x.parse::<BigInt>().map_err(|_| schema(path, format!("map entry {x:?} is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            let a = IntMatrix::from_entries(tgt.ngens(), src.ngens(), entries).map_err(|e| schema(path, e.to_string()))?;
            let h = GroupHom::new(src, tgt, a).map_err(|e| schema(path, e.to_string()))?;
            let table = match row.map {
                MapName::I => &mut c.i,
                MapName::J => &mut c.j,
                MapName::K => &mut c.k,
            };
            table.insert(m, h);
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let f: CoupleFile = parse_json(text, path)?;
        check_version(Some(f.schema_version), path)?;
        Ok(f)
    }
}
