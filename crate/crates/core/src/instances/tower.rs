//! `TowerSpec` input files and the builder that dispatches on their kind.
//!
//! ```json
//! {"schema_version": 1, "kind": "ahss", "complex": "torus", "coefficients": "Z",
//!  "options": {"window": [0, 2], "max_page": 3}}
//! ```
//!
//! `complex` and `base` name a fixture, a JSON file (relative to the spec) or
//! an inline `{"vertices", "simplices"}` object. `coefficients` is `"Z"`,
//! `"Z/n"`, `"laurent(d)"`, `"laurent(d,n)"`, a ring file path or an inline
//! ring object.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ahss::{build_ahss, Ahss};
use super::descent::{build_descent, CoverData};
use super::group::{build_group_page, GroupPage};
use super::serre::build_serre;
use crate::couple::{bockstein_pages, bockstein_pairing, BocksteinPages};
use crate::error::{Error, Result};
use crate::graded::ring::GradedRing;
use crate::io::{check_version, parse_json};
use crate::simplicial::complex::{OrderedComplex, SimplicialMap};
use crate::simplicial::fixtures;
use crate::simplicial::io::{ComplexFile, GroupFile};
use crate::simplicial::nerve::FiniteGroup;
use crate::ssengine::{abutment_check, e_infinity, page, page_pairing, AbutmentReport, FilteredCochainComplex, PageData, PagePairing};
use crate::ssengine::pairing::pairing_on_pages;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerKind {
    Ahss,
    Serre,
    Bockstein,
    Descent,
    Group,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Name(String),
    Inline(ComplexFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Cyclic { cyclic: usize },
    Inline(GroupFile),
    Path(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_page: Option<usize>,
    /// Total degrees with exact pages (AHSS only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    /// Whether the diagonal product is used for pairings.
    #[serde(default = "yes")]
    pub diagonal: bool,
    /// Group pages: bar complex dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maxdim: Option<usize>,
    /// Group pages: coefficient degrees to tabulate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i64>>,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions {
            max_page: None,
            window: None,
            diagonal: true,
            maxdim: None,
            degrees: None,
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub kind: TowerKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexRef>,
    /// Serre: base of the map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<ComplexRef>,
    /// Serre: vertex map from `complex` to `base`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
    /// Descent: pieces as facet lists of `complex`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default)]
    pub options: TowerOptions,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Parses a coefficient shorthand; anything else is read as a ring file.
pub fn parse_ring(s: &str, base: &Path) -> Result<GradedRing> {
    let s = s.trim();
    if s == "Z" {
        return Ok(GradedRing::integers());
    }
    if let Some(n) = s.strip_prefix("Z/") {
        let n: u64 = n.parse().map_err(|_| schema(s, "expected Z/n with n a positive integer"))?;
        if n < 2 {
            return Err(schema(s, "Z/n needs n at least 2"));
        }
        return Ok(GradedRing::mod_n(n));
    }
    if let Some(args) = s.strip_prefix("laurent(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let num = |i: usize| -> Result<i64> {
            parts
                .get(i)
                .map_or(Ok(0), |x| x.parse().map_err(|_| schema(s, "laurent(d) or laurent(d,n) with integers")))
        };
        let (d, n) = (num(0)?, num(1)?);
        if d < 1 || n < 0 || parts.len() > 2 {
            return Err(schema(s, "laurent(d,n) needs d at least 1 and n nonnegative"));
        }
        return Ok(GradedRing::laurent(d, n as u64));
    }
    let path = base.join(s);
    let text = std::fs::read_to_string(&path)?;
    GradedRing::from_json(&text, &path.display().to_string())
}

impl TowerSpec {
    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let spec: TowerSpec = parse_json(text, path)?;
        check_version(spec.schema_version, path)?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path)?;
        let spec = Self::from_json(&text, &path.display().to_string())?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((spec, base))
    }
}

fn resolve_complex(r: &ComplexRef, base: &Path, field: &str) -> Result<OrderedComplex> {
    match r {
        ComplexRef::Inline(f) => OrderedComplex::new(f.vertices.clone(), f.simplices.clone()),
        ComplexRef::Name(name) => {
            if let Some(k) = fixtures::by_name(name) {
                return Ok(k);
            }
            let path = base.join(name);
            if !path.exists() {
                return Err(schema(field, format!("{name:?} is neither a fixture nor a file")));
            }
            let text = std::fs::read_to_string(&path)?;
            crate::simplicial::io::complex_from_json(&text, &path.display().to_string())
        }
    }
}

fn resolve_group(r: &GroupRef, base: &Path) -> Result<(FiniteGroup, Option<Vec<Vec<i64>>>)> {
    match r {
        GroupRef::Cyclic { cyclic } => {
            if *cyclic == 0 {
                return Err(schema("group.cyclic", "order must be positive"));
            }
            Ok((FiniteGroup::cyclic(*cyclic), None))
        }
        GroupRef::Inline(f) => Ok((FiniteGroup::new(f.table.clone())?, f.action.clone())),
        GroupRef::Path(p) => {
            let path = base.join(p);
            let text = std::fs::read_to_string(&path)?;
            crate::simplicial::io::group_from_json(&text, &path.display().to_string())
        }
    }
}

/// A built tower together with what its pairings and pages need.
#[derive(Clone, Debug)]
pub enum TowerBody {
    Ahss { complex: OrderedComplex, ring: GradedRing, ahss: Ahss },
    Filtered(FilteredCochainComplex),
    Bockstein { complex: OrderedComplex, pages: BocksteinPages },
    Group(GroupPage),
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub kind: TowerKind,
    pub body: TowerBody,
    pub options: TowerOptions,
    /// Facts checked while building, e.g. acyclicity of cover pieces.
    pub notes: Vec<String>,
}

fn need<'a, T>(v: &'a Option<T>, field: &str, kind: TowerKind) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| schema(field, format!("required for kind {kind:?}").to_lowercase()))
}

impl TowerSpec {
    fn ring(&self, base: &Path) -> Result<GradedRing> {
        match &self.coefficients {
            None => Ok(match self.modulus {
                Some(n) if n >= 2 => GradedRing::mod_n(n),
                Some(0) | None => GradedRing::integers(),
                Some(_) => return Err(schema("modulus", "must be 0 or at least 2")),
            }),
            Some(serde_json::Value::String(s)) => parse_ring(s, base),
            Some(v) => GradedRing::from_json(&v.to_string(), "coefficients"),
        }
    }

    /// Coefficient modulus for the ungraded kinds (`0` for `Z`).
    fn modulus_value(&self, base: &Path) -> Result<BigInt> {
        if let Some(n) = self.modulus {
            if n == 1 {
                return Err(schema("modulus", "must be 0 or at least 2"));
            }
            return Ok(BigInt::from(n));
        }
        let ring = self.ring(base)?;
        if ring.finite_support().as_deref() != Some(&[0]) {
            return Err(schema("coefficients", "this kind takes Z or Z/n"));
        }
        Ok(ring.modulus(0).unwrap_or_default())
    }

    pub fn build(&self, base: &Path) -> Result<Tower> {
        let kind = self.kind;
        let mut notes = Vec::new();
        let body = match kind {
            TowerKind::Ahss => {
                let k = resolve_complex(need(&self.complex, "complex", kind)?, base, "complex")?;
                let ring = self.ring(base)?;
                let dim = k.dim().unwrap_or(0) as i64;
                let window = self.options.window.unwrap_or((0, dim));
                let ahss = build_ahss(&k, &ring, window)?;
                TowerBody::Ahss { complex: k, ring, ahss }
            }
            TowerKind::Serre => {
                let x = resolve_complex(need(&self.complex, "complex", kind)?, base, "complex")?;
                let b = resolve_complex(need(&self.base, "base", kind)?, base, "base")?;
                let map = SimplicialMap::new(x, b, need(&self.map, "map", kind)?.clone())?;
                TowerBody::Filtered(build_serre(&map, &self.modulus_value(base)?)?)
            }
            TowerKind::Descent => {
                let k = resolve_complex(need(&self.complex, "complex", kind)?, base, "complex")?;
                let cover = CoverData::new(k, need(&self.cover, "cover", kind)?)?;
                let m = self.modulus_value(base)?;
                notes.push(format!("pieces acyclic: {}", cover.pieces_acyclic(&m)));
                TowerBody::Filtered(build_descent(&cover, &m)?)
            }
            TowerKind::Bockstein => {
                let k = resolve_complex(need(&self.complex, "complex", kind)?, base, "complex")?;
                let n = self.modulus_value(base)?;
                let r_max = self.options.max_page.unwrap_or(16);
                let pages = bockstein_pages(&k, &n, r_max)?;
                notes.push(format!("pages cross-checked against cochain formula: {}", pages.cross_checked));
                TowerBody::Bockstein { complex: k, pages }
            }
            TowerKind::Group => {
                let (g, action) = resolve_group(need(&self.group, "group", kind)?, base)?;
                let ring = self.ring(base)?;
                let maxdim = self.options.maxdim.unwrap_or(5);
                let degrees = self.options.degrees.clone().unwrap_or_else(|| vec![0]);
                TowerBody::Group(build_group_page(&g, &ring, maxdim, &degrees, action.as_deref())?)
            }
        };
        Ok(Tower {
            kind,
            body,
            options: self.options.clone(),
            notes,
        })
    }
}

impl Tower {
    pub fn filtered(&self) -> Option<&FilteredCochainComplex> {
        match &self.body {
            TowerBody::Ahss { ahss, .. } => Some(&ahss.complex),
            TowerBody::Filtered(cx) => Some(cx),
            _ => None,
        }
    }

    /// Pages with index in `range` (inclusive); by default every page up to
    /// the limiting one, capped by `max_page`.
    pub fn pages(&self, range: Option<(usize, usize)>) -> Vec<PageData> {
        let cap = self.options.max_page.unwrap_or(usize::MAX);
        match &self.body {
            TowerBody::Bockstein { pages, .. } => pages
                .pages
                .iter()
                .filter(|p| range.is_none_or(|(a, b)| a <= p.r && p.r <= b) && p.r <= cap)
                .cloned()
                .collect(),
            TowerBody::Group(g) => {
                if range.is_none_or(|(a, b)| a <= 2 && 2 <= b) {
                    vec![g.graded.target.clone()]
                } else {
                    Vec::new()
                }
            }
            _ => {
                let cx = self.filtered().expect("filtered body");
                let (lo, hi) = match range {
                    Some(r) => r,
                    None => (1, e_infinity(cx).1.max(1).min(cap)),
                };
                (lo.max(1)..=hi).map(|r| page(cx, r).data()).collect()
            }
        }
    }

    /// Convergence check of the filtered kinds.
    pub fn abutment(&self) -> Option<AbutmentReport> {
        self.filtered().map(abutment_check)
    }

    /// Pairing on `E_r`, or `None` when the tower carries no product.
    pub fn pairing(&self, r: usize) -> Result<Option<PagePairing>> {
        if !self.options.diagonal {
            return Ok(None);
        }
        match &self.body {
            TowerBody::Ahss { ahss, .. } => {
                let cx = &ahss.complex;
                let pairing = cx.product().expect("products attached").clone();
                let e = page(cx, r);
                Ok(Some(pairing_on_pages(cx, cx, cx, &pairing, &e, &e, &e)?))
            }
            TowerBody::Filtered(cx) => match cx.product() {
                Some(p) => Ok(Some(page_pairing(cx, cx, cx, &p.clone(), r)?)),
                None => Ok(None),
            },
            TowerBody::Bockstein { complex, pages } => Ok(Some(bockstein_pairing(complex, &pages.modulus, r)?)),
            TowerBody::Group(g) => Ok(Some(g.graded.clone())),
        }
    }
}

/// Convenience for tests and the CLI: the modulus as a machine integer.
pub fn small_modulus(n: &BigInt) -> Option<u64> {
    if n.is_zero() {
        Some(0)
    } else {
        n.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds_each_kind() {
        let specs = [
            r#"{"kind": "ahss", "complex": "point", "coefficients": "Z"}"#,
            r#"{"kind": "serre", "complex": "torus", "base": "circle", "map": [0,0,0,1,1,1,2,2,2], "modulus": 2}"#,
            r#"{"kind": "bockstein", "complex": "rp2", "coefficients": "Z/2"}"#,
            r#"{"kind": "descent", "complex": "circle", "cover": [[[0,1],[1,2]], [[0,2]]]}"#,
            r#"{"kind": "group", "group": {"cyclic": 2}, "coefficients": "Z", "options": {"maxdim": 3}}"#,
        ];
        for s in specs {
            let spec = TowerSpec::from_json(s, "spec.json").unwrap();
            let t = spec.build(Path::new(".")).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert!(!t.pages(None).is_empty(), "{s}");
        }
    }

    #[test]
    fn missing_inputs_are_schema_errors() {
        let spec = TowerSpec::from_json(r#"{"kind": "serre", "complex": "torus"}"#, "s.json").unwrap();
        assert!(matches!(spec.build(Path::new(".")), Err(Error::Schema { .. })));
        assert!(TowerSpec::from_json(r#"{"kind": "nope"}"#, "s.json").is_err());
    }

    #[test]
    fn ring_shorthands() {
        let base = Path::new(".");
        assert_eq!(parse_ring("Z", base).unwrap(), GradedRing::integers());
        assert_eq!(parse_ring("Z/3", base).unwrap(), GradedRing::mod_n(3));
        assert_eq!(parse_ring("laurent(2)", base).unwrap(), GradedRing::laurent(2, 0));
        assert!(parse_ring("Z/1", base).is_err());
    }
}
