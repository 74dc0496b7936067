use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::cochains::split_table;
use crate::error::Result;
use crate::exactlin::{induced_map, GroupHom, IntMatrix, Subquotient};
use crate::graded::cochain::{bigraded_cohomology, graded_cup, graded_cup_sign, graded_delta_matrix, ungraded_cup, BigradedCochain};
use crate::graded::ring::GradedRing;
use crate::simplicial::chain::Cellular;
use crate::ssengine::pairing::{pairing_on_pages, static_page, tabulate};
use crate::ssengine::{d_shift, page, Bidegree, Cell, ChainPairing, FilteredCochainComplex, Identification, PagePairing};

/// Which cup product sign the chain pairing uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CupSign {
    /// `(-1)^{(s-t)p}`.
    Graded,
    /// `(-1)^{ps}`.
    Ungraded,
}

impl CupSign {
    fn sign(self, p: usize, s: usize, t: i64) -> i64 {
        match self {
            CupSign::Graded => graded_cup_sign(p, s, t),
            CupSign::Ungraded => {
                if (p * s).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// Skeletally filtered bigraded cochain complex `C^{p,q}(K; A)`: cell
/// `(σ, q)` has filtration `p = dim σ`, coefficient degree `q` and total
/// degree `p - q`.
#[derive(Clone, Debug)]
pub struct Ahss {
    pub complex: FilteredCochainComplex,
    /// Cell id -> `(p, simplex index, q)`.
    pub cells: Vec<(usize, usize, i64)>,
    lookup: HashMap<(usize, usize, i64), usize>,
    pub window: (i64, i64),
    pub q_range: (i64, i64),
}

impl Ahss {
    pub fn cell(&self, p: usize, i: usize, q: i64) -> Option<usize> {
        self.lookup.get(&(p, i, q)).copied()
    }

    /// Projection from the degree-`p - q` block onto the `(p, q)` cochains.
    pub fn projection(&self, p: usize, q: i64, cells_p: usize) -> IntMatrix {
        let n = p as i64 - q;
        let block = self.complex.block(n);
        let mut m = IntMatrix::zeros(cells_p, block.len());
        for (j, &g) in block.iter().enumerate() {
            let (pp, i, qq) = self.cells[g];
            if pp == p && qq == q {
                m[(i, j)] = BigInt::from(1);
            }
        }
        m
    }
}

/// Coefficient degrees needed for exact pages in total degrees `window`.
pub fn q_range(dim: usize, window: (i64, i64)) -> (i64, i64) {
    (-window.1, dim as i64 - window.0)
}

/// Builds the skeletal filtration of the bigraded cochains of `cx` with
/// coefficients in `ring`, exact in total degrees `window`, carrying the
/// graded cup product along the front/back diagonal.
pub fn build_ahss<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, window: (i64, i64)) -> Result<Ahss> {
    build_ahss_with(cx, ring, window, CupSign::Graded)
}

pub fn build_ahss_with<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, window: (i64, i64), sign: CupSign) -> Result<Ahss> {
    let chain = cx.chain();
    let dim = chain.len().saturating_sub(1);
    let qr = q_range(dim, window);
    let qs = ring.support_in(qr.0, qr.1);
    let mut cells = Vec::new();
    let mut meta = Vec::new();
    let mut lookup = HashMap::new();
    for &q in &qs {
        let m = ring.modulus(q).expect("support level");
        for p in 0..chain.len() {
            for (i, label) in chain.labels(p).iter().enumerate() {
                lookup.insert((p, i, q), cells.len());
                meta.push((p, i, q));
                cells.push(Cell {
                    degree: p as i64 - q,
                    filtration: p as i64,
                    modulus: m.clone(),
                    label: format!("{label}@{q}"),
                });
            }
        }
    }
    let mut entries = Vec::new();
    for &q in &qs {
        for p in 0..chain.len().saturating_sub(1) {
            let d = graded_delta_matrix(cx, p, q);
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let v = &d[(r, c)];
                    if !v.is_zero() {
                        entries.push((lookup[&(p + 1, r, q)], lookup[&(p, c, q)], v.clone()));
                    }
                }
            }
        }
    }
    let mut complex = FilteredCochainComplex::with_window(cells, entries, window)?;
    complex.set_product(graded_chain_pairing(cx, ring, &meta, &lookup, sign))?;
    Ok(Ahss {
        complex,
        cells: meta,
        lookup,
        window,
        q_range: qr,
    })
}

fn graded_chain_pairing<C: Cellular + ?Sized>(
    cx: &C,
    ring: &GradedRing,
    meta: &[(usize, usize, i64)],
    lookup: &HashMap<(usize, usize, i64), usize>,
    sign: CupSign,
) -> ChainPairing {
    let table = Arc::new(split_table(cx));
    let ring = ring.clone();
    let meta = meta.to_vec();
    let lookup = lookup.clone();
    ChainPairing::new(move |x, y| {
        let (p, a, q) = meta[x];
        let (s, b, t) = meta[y];
        let c = ring.constant(q, t);
        if c.is_zero() {
            return Vec::new();
        }
        let v = c * sign.sign(p, s, t);
        table
            .get(&(p, s, a, b))
            .map(|rs| {
                rs.iter()
                    .filter_map(|&r| lookup.get(&(p + s, r, q + t)).map(|&g| (g, v.clone())))
                    .collect()
            })
            .unwrap_or_default()
    })
}

/// Checks that `E_1` with `d_1` is the bigraded complex with the graded
/// coboundary: each `E_1^{p,q}` maps isomorphically onto `C^{p,q}` by
/// projection, and the projections intertwine `d_1` and `δ`.
pub fn verify_e1<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, ahss: &Ahss) -> bool {
    let e1 = page(&ahss.complex, 1);
    let chain = cx.chain();
    let cochains = |p: usize, q: i64| -> Option<Subquotient> {
        let n = chain.cell_count(p);
        let m = ring.modulus(q)?;
        let rel = if m.is_zero() {
            IntMatrix::zeros(n, 0)
        } else {
            IntMatrix::identity(n).scale(&m)
        };
        Subquotient::new(n, &IntMatrix::identity(n), &rel).ok()
    };
    let window = ahss.complex.window();
    for (b, entry) in e1.entries() {
        let n = b.total();
        if n < window.0 || n > window.1 {
            continue;
        }
        let (p, q) = (b.f as usize, b.c);
        let Some(cpq) = cochains(p, q) else {
            if !entry.group().is_trivial() {
                return false;
            }
            continue;
        };
        let Ok(phi) = induced_map(&ahss.projection(p, q, chain.cell_count(p)), entry, &cpq) else {
            return false;
        };
        if !phi.is_iso() {
            return false;
        }
        let t = *b + d_shift(1);
        if t.total() > window.1 || p + 1 >= chain.len() {
            continue;
        }
        let (Some(next), Some(cnext)) = (e1.entry(t), cochains(p + 1, q)) else {
            continue;
        };
        let Ok(psi) = induced_map(&ahss.projection(p + 1, q, chain.cell_count(p + 1)), next, &cnext) else {
            return false;
        };
        let Ok(delta) = induced_map(&graded_delta_matrix(cx, p, q), &cpq, &cnext) else {
            return false;
        };
        let d1 = e1.differential(*b).cloned().unwrap_or_else(|| GroupHom::zero(entry.group(), next.group()));
        let lhs = psi.compose(&d1).expect("composable");
        let rhs = delta.compose(&phi).expect("composable");
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// `E_2` pairing of the AHSS next to the graded and ungraded cup pairings on
/// `H^{p,q}`, with the identification of `E_2` with `H^{p,q}` by projection.
#[derive(Clone, Debug)]
pub struct AhssComparison {
    pub e2: PagePairing,
    pub graded: PagePairing,
    pub ungraded: PagePairing,
    pub identification: Identification,
}

/// Bigraded cohomology `H^{p,q}` for `p ≤ max_p`, `q` in `qs`, keyed `(p, q)`.
pub fn bigraded_table<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, max_p: usize, qs: &[i64]) -> BTreeMap<Bidegree, Subquotient> {
    let mut out = BTreeMap::new();
    for p in 0..=max_p.min(cx.chain().len().saturating_sub(1)) {
        for &q in qs {
            out.insert(Bidegree::new(p as i64, q), bigraded_cohomology(cx, ring, p, q));
        }
    }
    out
}

/// Cup pairing on a bigraded cohomology table, with the given sign rule.
pub fn cohomology_pairing<C: Cellular + ?Sized>(
    cx: &C,
    ring: &GradedRing,
    table: &BTreeMap<Bidegree, Subquotient>,
    sign: CupSign,
    exact: Option<(i64, i64)>,
    bounds: Option<(Bidegree, Bidegree)>,
) -> Result<PagePairing> {
    let tables = tabulate(table, table, table, |u, x, v, y| {
        let a = BigradedCochain::new(ring, u.f as usize, u.c, x.to_vec());
        let b = BigradedCochain::new(ring, v.f as usize, v.c, y.to_vec());
        match sign {
            CupSign::Graded => graded_cup(cx, ring, &a, &b).values,
            CupSign::Ungraded => ungraded_cup(cx, ring, &a, &b).values,
        }
    })?;
    let data = static_page(2, d_shift(2), table, exact, bounds);
    Ok(PagePairing {
        left: data.clone(),
        right: data.clone(),
        target: data,
        tables,
    })
}

pub fn ahss_comparison<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, ahss: &Ahss) -> Result<AhssComparison> {
    let e2 = page(&ahss.complex, 2);
    let pairing = ahss.complex.product().expect("built with a product").clone();
    let e2p = pairing_on_pages(&ahss.complex, &ahss.complex, &ahss.complex, &pairing, &e2, &e2, &e2)?;
    let (lo, hi) = ahss.window;
    let qs = ring.support_in(ahss.q_range.0, ahss.q_range.1);
    let dim = cx.chain().len().saturating_sub(1);
    let table: BTreeMap<Bidegree, Subquotient> = bigraded_table(cx, ring, dim, &qs)
        .into_iter()
        .filter(|(b, _)| lo <= b.total() && b.total() <= hi)
        .collect();
    let exact = Some(ahss.window);
    let graded = cohomology_pairing(cx, ring, &table, CupSign::Graded, exact, None)?;
    let ungraded = cohomology_pairing(cx, ring, &table, CupSign::Ungraded, exact, None)?;
    let mut maps = BTreeMap::new();
    for (b, h) in &table {
        let Some(entry) = e2.entry(*b) else { continue };
        let proj = ahss.projection(b.f as usize, b.c, h.ambient());
        maps.insert(*b, induced_map(&proj, entry, h)?);
    }
    Ok(AhssComparison {
        e2: e2p,
        graded,
        ungraded,
        identification: Identification {
            left: maps.clone(),
            right: maps.clone(),
            target: maps,
        },
    })
}
