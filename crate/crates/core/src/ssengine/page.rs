use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::{Bidegree, FilteredCochainComplex};
use crate::error::Result;
use crate::exactlin::{homology, induced_map, preimage_mod, FgGroup, GroupHom, IntMatrix, Subquotient};

/// Bidegree shift of `d_r` in engine indexing: `(f, c) -> (f + r, c + r - 1)`.
pub fn d_shift(r: usize) -> Bidegree {
    Bidegree::new(r as i64, r as i64 - 1)
}

/// Groups and differentials of one page, without lattice data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageData {
    pub r: usize,
    pub d_shift: Bidegree,
    pub groups: BTreeMap<Bidegree, FgGroup>,
    /// Keyed by source bidegree; the target is `source + d_shift`.
    pub differentials: BTreeMap<Bidegree, GroupHom>,
    /// Total degrees known exactly; `None` means all, with absent entries zero.
    pub exact: Option<(i64, i64)>,
    /// Box `(lower, upper)` of known bidegrees, when not everything is known.
    pub bounds: Option<(Bidegree, Bidegree)>,
}

impl PageData {
    pub fn group(&self, b: Bidegree) -> FgGroup {
        self.groups.get(&b).cloned().unwrap_or_default()
    }

    pub fn is_exact(&self, b: Bidegree) -> bool {
        let n = b.total();
        self.exact.is_none_or(|(lo, hi)| lo <= n && n <= hi) 
            && self
                .bounds
                .is_none_or(|(lo, hi)| lo.f <= b.f && b.f <= hi.f && lo.c <= b.c && b.c <= hi.c)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Bidegree, &FgGroup)> {
        self.groups.iter().filter(|(_, g)| !g.is_trivial())
    }

    /// `d` at `b` applied to `x`, or `None` when the target degree is not known exactly.
    pub fn differential(&self, b: Bidegree, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let t = b + self.d_shift;
        if !self.is_exact(t) {
            return None;
        }
        match self.differentials.get(&b) {
            Some(d) => Some(d.apply(x)),
            None => Some(vec![BigInt::from(0); self.group(t).ngens()]),
        }
    }
}

/// Page `E_r` with every entry as an explicit subquotient of cochains.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    entries: BTreeMap<Bidegree, Subquotient>,
    differentials: BTreeMap<Bidegree, GroupHom>,
    exact: Option<(i64, i64)>,
}

impl Page {
    pub fn entries(&self) -> &BTreeMap<Bidegree, Subquotient> {
        &self.entries
    }

    pub fn entry(&self, b: Bidegree) -> Option<&Subquotient> {
        self.entries.get(&b)
    }

    pub fn group(&self, b: Bidegree) -> FgGroup {
        self.entries.get(&b).map(|s| s.group().clone()).unwrap_or_default()
    }

    pub fn differential(&self, b: Bidegree) -> Option<&GroupHom> {
        self.differentials.get(&b)
    }

    pub fn differentials(&self) -> &BTreeMap<Bidegree, GroupHom> {
        &self.differentials
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.differentials.values().any(|d| !d.is_zero())
    }

    pub fn data(&self) -> PageData {
        PageData {
            r: self.r,
            d_shift: d_shift(self.r),
            groups: self.entries.iter().map(|(b, s)| (*b, s.group().clone())).collect(),
            differentials: self.differentials.clone(),
            exact: self.exact,
            bounds: None,
        }
    }
}

/// `Z_r^f` in degree `n`: cochains in `F^f` whose coboundary lies in `F^{f+r}`,
/// modulo coefficient relations. `r = None` asks for all cocycles in `F^f`.
pub fn z_lattice(cx: &FilteredCochainComplex, n: i64, f: i64, r: Option<usize>) -> IntMatrix {
    let src = cx.filtrations(n);
    let tgt = cx.filtrations(n + 1);
    let d = cx.d_matrix(n);
    let src_mod = cx.moduli(n);
    let tgt_mod = cx.moduli(n + 1);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut moduli = Vec::new();
    for (i, &fi) in src.iter().enumerate() {
        if fi < f {
            let mut row = vec![BigInt::from(0); src.len()];
            row[i] = BigInt::from(1);
            rows.push(row);
            moduli.push(src_mod[i].clone());
        }
    }
    for (j, &fj) in tgt.iter().enumerate() {
        if r.is_none_or(|r| fj < f + r as i64) {
            rows.push(d.row(j).to_vec());
            moduli.push(tgt_mod[j].clone());
        }
    }
    if rows.is_empty() {
        return IntMatrix::identity(src.len());
    }
    let a = IntMatrix::from_entries(rows.len(), src.len(), rows.concat()).expect("rows have equal length");
    preimage_mod(&a, &moduli)
}

/// `Z_{r-1}^{f+1} + d Z_{r-1}^{f-r+1}` in degree `n`.
pub fn b_lattice(cx: &FilteredCochainComplex, n: i64, f: i64, r: usize) -> IntMatrix {
    let inner = z_lattice(cx, n, f + 1, Some(r - 1));
    let prev = z_lattice(cx, n - 1, f - r as i64 + 1, Some(r - 1));
    let image = cx.d_matrix(n - 1).mul(&prev).expect("shapes agree");
    inner.hstack(&image).expect("rows agree")
}

/// `E_r^f` in total degree `n`.
pub fn entry(cx: &FilteredCochainComplex, n: i64, f: i64, r: usize) -> Subquotient {
    let size = cx.block(n).len();
    Subquotient::new(size, &z_lattice(cx, n, f, Some(r)), &b_lattice(cx, n, f, r))
        .expect("boundaries of the page lie in its cycles")
}

fn bidegrees(cx: &FilteredCochainComplex) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for n in cx.degrees() {
        let fs = cx.filtrations(n);
        let (Some(&lo), Some(&hi)) = (fs.iter().min(), fs.iter().max()) else {
            continue;
        };
        for f in lo..=hi {
            out.push(Bidegree::from_total(f, n));
        }
    }
    out
}

/// Computes `E_r` (`r ≥ 1`) with all its differentials.
pub fn page(cx: &FilteredCochainComplex, r: usize) -> Page {
    assert!(r >= 1, "pages start at r = 1");
    let keys = bidegrees(cx);
    let entries: BTreeMap<Bidegree, Subquotient> = keys
        .par_iter()
        .map(|b| (*b, entry(cx, b.total(), b.f, r)))
        .collect();
    let shift = d_shift(r);
    let differentials: BTreeMap<Bidegree, GroupHom> = entries
        .par_iter()
        .filter_map(|(b, src)| {
            let t = *b + shift;
            let tgt = entries.get(&t)?;
            let d = induced_map(&cx.d_matrix(b.total()), src, tgt).expect("d_r is well defined on E_r");
            Some((*b, d))
        })
        .collect();
    Page {
        r,
        entries,
        differentials,
        exact: cx.exact_degrees(),
    }
}

/// Number of pages after which every differential vanishes for filtration reasons.
pub fn collapse_bound(cx: &FilteredCochainComplex) -> usize {
    cx.filtration_range().map_or(1, |(lo, hi)| (hi - lo) as usize + 1)
}

/// `E_1, ..., E_{bound}` where `E_{bound}` is `E_∞`.
pub fn pages(cx: &FilteredCochainComplex) -> Vec<Page> {
    (1..=collapse_bound(cx)).map(|r| page(cx, r)).collect()
}

/// `E_∞` and the least `r` with `E_r = E_∞`.
pub fn e_infinity(cx: &FilteredCochainComplex) -> (Page, usize) {
    let all = pages(cx);
    let mut limit = all.len();
    while limit > 1 && !all[limit - 2].has_nonzero_differential() {
        limit -= 1;
    }
    (all.into_iter().last().expect("at least one page"), limit)
}

/// Checks that every entry of `next` is the homology of `prev` at that spot.
/// Returns the first bidegree where the groups differ.
pub fn verify_homology_step(prev: &Page, next: &Page) -> Result<Option<Bidegree>> {
    let shift = d_shift(prev.r);
    for (b, e) in &next.entries {
        if let Some((lo, hi)) = prev.exact {
            if b.total() <= lo || b.total() >= hi {
                continue;
            }
        }
        let here = prev.group(*b);
        let into = match prev.entries.get(&Bidegree::new(b.f - shift.f, b.c - shift.c)) {
            Some(s) => prev
                .differential(Bidegree::new(b.f - shift.f, b.c - shift.c))
                .cloned()
                .unwrap_or_else(|| GroupHom::zero(s.group(), &here)),
            None => GroupHom::zero(&FgGroup::trivial(), &here),
        };
        let out = prev
            .differential(*b)
            .cloned()
            .unwrap_or_else(|| GroupHom::zero(&here, &FgGroup::trivial()));
        let h = homology(&into, &out)?;
        if h.group() != e.group() {
            return Ok(Some(*b));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub f: i64,
    /// `F^f H / F^{f+1} H`.
    pub graded: FgGroup,
    pub e_infinity: FgGroup,
    /// Whether the identity on cochains induces an isomorphism between the two.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAbutment {
    pub n: i64,
    pub total: FgGroup,
    pub pieces: Vec<GradedPiece>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbutmentReport {
    pub limit: usize,
    pub degrees: Vec<DegreeAbutment>,
    pub ok: bool,
}

/// Compares `E_∞` with the associated graded of the filtered cohomology.
pub fn abutment_check(cx: &FilteredCochainComplex) -> AbutmentReport {
    let (einf, limit) = e_infinity(cx);
    let degrees: Vec<DegreeAbutment> = cx
        .degrees()
        .par_iter()
        .map(|&n| {
            let size = cx.block(n).len();
            let rel = cx.relations(n);
            let bounds = cx.d_matrix(n - 1).hstack(&rel).expect("rows agree");
            let all = z_lattice(cx, n, i64::MIN / 4, None);
            let total = Subquotient::new(size, &all, &bounds).expect("boundaries are cocycles");
            let fs = cx.filtrations(n);
            let mut pieces = Vec::new();
            let mut rank = 0;
            let mut order = BigInt::from(1);
            if let (Some(&lo), Some(&hi)) = (fs.iter().min(), fs.iter().max()) {
                for f in lo..=hi {
                    let num = z_lattice(cx, n, f, None).hstack(&bounds).expect("rows agree");
                    let den = z_lattice(cx, n, f + 1, None).hstack(&bounds).expect("rows agree");
                    let gr = Subquotient::new(size, &num, &den).expect("filtration is decreasing");
                    let e = einf.entry(Bidegree::from_total(f, n)).expect("entry in range");
                    let certified = induced_map(&IntMatrix::identity(size), e, &gr)
                        .map(|m| m.is_iso())
                        .unwrap_or(false);
                    rank += gr.group().rank();
                    for t in gr.group().torsion() {
                        order *= t;
                    }
                    pieces.push(GradedPiece {
                        f,
                        graded: gr.group().clone(),
                        e_infinity: e.group().clone(),
                        certified,
                    });
                }
            }
            let total_order: BigInt = total.group().torsion().iter().product();
            let ok = pieces.iter().all(|p| p.certified && p.graded == p.e_infinity)
                && rank == total.group().rank()
                && order == total_order;
            DegreeAbutment {
                n,
                total: total.group().clone(),
                pieces,
                ok,
            }
        })
        .collect();
    let ok = degrees.iter().all(|d| d.ok);
    AbutmentReport { limit, degrees, ok }
}
