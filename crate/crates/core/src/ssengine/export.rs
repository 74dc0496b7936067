//! Page, pairing and verdict files. Integers are written as full decimal
//! strings so files round-trip exactly.

use serde::{Deserialize, Serialize};

use super::complex::Bidegree;
use super::page::PageData;
use super::pairing::{IsoVerdict, LeibnizReport, PagePairing};
use crate::error::{Error, Result};
use crate::exactlin::{FgGroup, GroupHom, IntMatrix};
use crate::graded::reindex::{engine_to_paper, paper_to_engine, Indexing};
use crate::io::{check_version, parse_json, to_json, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRow {
    pub target: [i64; 2],
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRow {
    pub bidegree: [i64; 2],
    pub rank: usize,
    pub torsion: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<DifferentialRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageFile {
    pub schema_version: u32,
    pub indexing: Indexing,
    pub r: usize,
    pub d_shift: [i64; 2],
    pub entries: Vec<EntryRow>,
}

fn dec_matrix(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn group_of(row: &EntryRow, path: &str) -> Result<FgGroup> {
    let torsion = row
        .torsion
        .iter()
        .map(|t| {
            t.parse().map_err(|_| Error::Schema {
                path: path.into(),
                message: format!("torsion coefficient {t:?} is not an integer"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FgGroup::new(row.rank, torsion).map_err(|e| Error::Schema {
        path: path.into(),
        message: e.to_string(),
    })
}

impl PageFile {
    /// Page file in engine indexing; only nonzero entries are listed.
    pub fn from_page(data: &PageData) -> Self {
        let mut entries = Vec::new();
        for (b, g) in data.nonzero() {
            let t = *b + data.d_shift;
            let d = data
                .differentials
                .get(b)
                .filter(|_| !data.group(t).is_trivial())
                .map(|d| DifferentialRow {
                    target: [t.f, t.c],
                    matrix: dec_matrix(d.matrix()),
                });
            entries.push(EntryRow {
                bidegree: [b.f, b.c],
                rank: g.rank(),
                torsion: g.torsion().iter().map(ToString::to_string).collect(),
                d,
            });
        }
        PageFile {
            schema_version: SCHEMA_VERSION,
            indexing: Indexing::Engine,
            r: data.r,
            d_shift: [data.d_shift.f, data.d_shift.c],
            entries,
        }
    }

    /// Rebuilds page data (engine indexing) from a file in either indexing.
    pub fn to_page(&self, path: &str) -> Result<PageData> {
        let file = self.convert(Indexing::Engine);
        let mut data = PageData {
            r: file.r,
            d_shift: Bidegree::new(file.d_shift[0], file.d_shift[1]),
            groups: Default::default(),
            differentials: Default::default(),
            exact: None,
            bounds: None,
        };
        for row in &file.entries {
            data.groups.insert(Bidegree::new(row.bidegree[0], row.bidegree[1]), group_of(row, path)?);
        }
        for row in &file.entries {
            let Some(d) = &row.d else { continue };
            let src = Bidegree::new(row.bidegree[0], row.bidegree[1]);
            let tgt = Bidegree::new(d.target[0], d.target[1]);
            let rows: Vec<Vec<num_bigint::BigInt>> = d
                .matrix
                .iter()
                .map(|r| r.iter().map(|x| x.parse()).collect::<std::result::Result<_, _>>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Schema {
                    path: path.into(),
                    message: format!("differential at {src} has a non-integer entry"),
                })?;
            let (tg, sg) = (data.group(tgt), data.group(src));
            let m = IntMatrix::from_entries(tg.ngens(), sg.ngens(), rows.concat()).map_err(|e| Error::Schema {
                path: path.into(),
                message: e.to_string(),
            })?;
            let hom = GroupHom::new(sg, tg, m).map_err(|e| Error::Schema {
                path: path.into(),
                message: e.to_string(),
            })?;
            data.differentials.insert(src, hom);
        }
        Ok(data)
    }

    /// Re-expresses every bidegree in the requested indexing, sorted.
    pub fn convert(&self, to: Indexing) -> PageFile {
        let map: fn(i64, i64) -> (i64, i64) = match (self.indexing, to) {
            (a, b) if a == b => |a, b| (a, b),
            (Indexing::Engine, Indexing::Paper) => engine_to_paper,
            _ => paper_to_engine,
        };
        let pair = |v: [i64; 2]| {
            let (a, b) = map(v[0], v[1]);
            [a, b]
        };
        let mut entries: Vec<EntryRow> = self
            .entries
            .iter()
            .map(|e| EntryRow {
                bidegree: pair(e.bidegree),
                rank: e.rank,
                torsion: e.torsion.clone(),
                d: e.d.as_ref().map(|d| DifferentialRow {
                    target: pair(d.target),
                    matrix: d.matrix.clone(),
                }),
            })
            .collect();
        entries.sort_by_key(|e| e.bidegree);
        PageFile {
            schema_version: self.schema_version,
            indexing: to,
            r: self.r,
            d_shift: pair(self.d_shift),
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let f: PageFile = parse_json(text, path)?;
        check_version(Some(f.schema_version), path)?;
        Ok(f)
    }

    /// One CSV row per entry: `r,a,b,rank,torsion,target_a,target_b,matrix`,
    /// torsion separated by spaces and matrix rows by `;`.
    pub fn to_csv(&self) -> String {
        let (a, b) = match self.indexing {
            Indexing::Engine => ("f", "c"),
            Indexing::Paper => ("p", "q"),
        };
        let mut out = format!("schema_version,r,{a},{b},rank,torsion,target_{a},target_{b},matrix\n");
        for e in &self.entries {
            let (ta, tb, m) = match &e.d {
                Some(d) => (
                    d.target[0].to_string(),
                    d.target[1].to_string(),
                    d.matrix.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join(";"),
                ),
                None => Default::default(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                self.schema_version,
                self.r,
                e.bidegree[0],
                e.bidegree[1],
                e.rank,
                e.torsion.join(" "),
                ta,
                tb,
                m
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRow {
    pub left: [i64; 2],
    pub right: [i64; 2],
    /// `table[i][j]` = coordinates of the product of generators `i` and `j`.
    pub table: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingFile {
    pub schema_version: u32,
    pub indexing: Indexing,
    pub left: PageFile,
    pub right: PageFile,
    pub target: PageFile,
    pub products: Vec<ProductRow>,
}

impl PairingFile {
    pub fn from_pairing(pp: &PagePairing) -> Self {
        let products = pp
            .tables
            .iter()
            .map(|((u, v), t)| ProductRow {
                left: [u.f, u.c],
                right: [v.f, v.c],
                table: t
                    .iter()
                    .map(|row| row.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect())
                    .collect(),
            })
            .collect();
        PairingFile {
            schema_version: SCHEMA_VERSION,
            indexing: Indexing::Engine,
            left: PageFile::from_page(&pp.left),
            right: PageFile::from_page(&pp.right),
            target: PageFile::from_page(&pp.target),
            products,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictFile {
    pub schema_version: u32,
    pub label: String,
    pub isomorphic: bool,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    /// `[left f, left c, generator, right f, right c, generator]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<[i64; 6]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leibniz_failures: Option<usize>,
}

impl VerdictFile {
    pub fn from_verdict(label: &str, v: &IsoVerdict) -> Self {
        VerdictFile {
            schema_version: SCHEMA_VERSION,
            label: label.into(),
            isomorphic: v.isomorphic,
            checked: v.checked,
            obstruction: v.obstruction.clone(),
            counterexample: v
                .counterexample
                .as_ref()
                .map(|c| [c.left.f, c.left.c, c.i as i64, c.right.f, c.right.c, c.j as i64]),
            leibniz_failures: None,
        }
    }

    pub fn from_leibniz(label: &str, rep: &LeibnizReport) -> Self {
        VerdictFile {
            schema_version: SCHEMA_VERSION,
            label: label.into(),
            isomorphic: rep.ok(),
            checked: rep.checked,
            obstruction: None,
            counterexample: rep
                .failures
                .first()
                .map(|c| [c.left.f, c.left.c, c.i as i64, c.right.f, c.right.c, c.j as i64]),
            leibniz_failures: Some(rep.failures.len()),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}
