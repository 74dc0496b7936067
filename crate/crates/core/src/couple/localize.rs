use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exact::{ExactCouple, Shifts};
use crate::error::{Error, Result};
use crate::exactlin::{induced_map, lattice_basis, FgGroup, GroupHom, IntMatrix, Subquotient};
use crate::graded::cochain::bigraded_cohomology;
use crate::graded::ring::GradedRing;
use crate::simplicial::chain::Cellular;

/// Colimit of `D^m -> D^{m+s} -> ...` along `i`, presented as
/// `torsion ⊕ Z[1/inverted]^free_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localized {
    pub degree: i64,
    pub torsion: FgGroup,
    pub free_rank: usize,
    /// `1` when the free part is not localized.
    pub inverted: BigInt,
}

impl fmt::Display for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.torsion.is_trivial() {
            parts.push(self.torsion.to_string());
        }
        if self.free_rank > 0 {
            let base = if self.inverted.is_one() {
                "Z".to_string()
            } else {
                format!("Z[1/{}]", self.inverted)
            };
            parts.push(if self.free_rank == 1 {
                base
            } else {
                format!("{base}^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

const MAX_STEPS: usize = 64;

/// Localizes `D` at the periodicity operator `i`.
///
/// With `i` of degree 0 the colimit of each `D^m` is computed exactly from
/// the eventual image of `i`. Otherwise the chain of degrees is followed to
/// the edge of the supplied range and its last group is returned, provided
/// the last map is an isomorphism.
pub fn beta_localize(c: &ExactCouple) -> Result<BTreeMap<i64, Localized>> {
    if !c.periodic {
        return Err(Error::NoPeriodicityDeclared);
    }
    let s = c.shifts.i;
    let mut out = BTreeMap::new();
    if s == 0 {
        for &m in c.d.keys() {
            out.insert(m, stable_endomorphism(m, &c.i_map(m))?);
        }
        return Ok(out);
    }
    let (Some(&lo), Some(&hi)) = (c.d.keys().next(), c.d.keys().next_back()) else {
        return Ok(out);
    };
    for m in lo..=hi {
        let mut cur = m;
        let mut last_iso = None;
        while (lo..=hi).contains(&(cur + s)) {
            last_iso = Some(c.i_map(cur).is_iso());
            cur += s;
        }
        match last_iso {
            None => continue,
            Some(false) => return Err(Error::NotStabilized(m)),
            Some(true) => {
                let g = c.d_group(cur);
                out.insert(
                    m,
                    Localized {
                        degree: m,
                        torsion: FgGroup::from_orders(g.torsion()),
                        free_rank: g.rank(),
                        inverted: BigInt::one(),
                    },
                );
            }
        }
    }
    Ok(out)
}

fn stable_endomorphism(m: i64, phi: &GroupHom) -> Result<Localized> {
    let g = phi.source();
    let n = g.ngens();
    let rel = g.relations();
    let mut lattice = IntMatrix::identity(n);
    let mut group = g.clone();
    for _ in 0..MAX_STEPS {
        let img = phi.matrix().mul(&lattice)?.hstack(&rel)?;
        let next = lattice_basis(&img);
        let next_group = Subquotient::new(n, &next, &rel)?.group().clone();
        if next_group == group {
            // φ maps the image onto the next image and the two are isomorphic,
            // so φ restricted to the eventual image is injective.
            let e = Subquotient::new(n, &lattice, &rel)?;
            let psi = induced_map(phi.matrix(), &e, &e)?;
            let t = e.group().torsion().len();
            let r = e.group().rank();
            let idx: Vec<usize> = (t..t + r).collect();
            let free = psi.matrix().select_rows(&idx).select_cols(&idx);
            let det = if r == 0 { BigInt::one() } else { free.det()?.abs() };
            if det.is_zero() {
                return Err(Error::NotStabilized(m));
            }
            return Ok(Localized {
                degree: m,
                torsion: FgGroup::from_orders(e.group().torsion()),
                free_rank: r,
                inverted: det,
            });
        }
        lattice = next;
        group = next_group;
    }
    Err(Error::NotStabilized(m))
}

fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
    let rows = blocks.iter().map(IntMatrix::rows).sum();
    let cols = blocks.iter().map(IntMatrix::cols).sum();
    let mut out = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// Collapsed periodic couple of a complex with coefficients in a periodic
/// ring: `D^m = ⊕_p H^p(K; A_{p-m})`, `i` multiplication by the periodicity
/// generator (degree `-period`), `E = 0`. Degrees `m` run over `range`; the
/// truncation is exact except in the lowest `period` degrees, where `i`
/// leaves the stored range.
pub fn k_collapse_couple<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, range: (i64, i64)) -> Result<ExactCouple> {
    let period = ring.period().ok_or(Error::NoPeriodicityDeclared)?;
    let dims = cx.chain().len();
    // per degree: the pieces (p, q) and the block subquotient
    let mut blocks: BTreeMap<i64, (Vec<(usize, i64)>, Subquotient)> = BTreeMap::new();
    for m in range.0..=range.1 + period {
        let mut pieces = Vec::new();
        let (mut nums, mut dens) = (Vec::new(), Vec::new());
        for p in 0..dims {
            let q = p as i64 - m;
            if ring.level(q).is_zero() {
                continue;
            }
            let h = bigraded_cohomology(cx, ring, p, q);
            nums.push(h.numerator().clone());
            dens.push(h.denominator().clone());
            pieces.push((p, q));
        }
        let num = block_diagonal(&nums);
        let sq = Subquotient::new(num.rows(), &num, &block_diagonal(&dens))?;
        blocks.insert(m, (pieces, sq));
    }
    let mut c = ExactCouple {
        d: BTreeMap::new(),
        e: BTreeMap::new(),
        i: BTreeMap::new(),
        j: BTreeMap::new(),
        k: BTreeMap::new(),
        shifts: Shifts { i: -period, j: 0, k: 1 },
        periodic: true,
    };
    for m in range.0..=range.1 {
        let (pieces, src) = &blocks[&m];
        if !src.group().is_trivial() {
            c.d.insert(m, src.group().clone());
        }
        let t = m - period;
        if t < range.0 {
            continue;
        }
        let (tpieces, tgt) = &blocks[&t];
        // x^{period}: A_q -> A_{q + period} with structure constant c(q, period)
        let mut mat = IntMatrix::zeros(tgt.ambient(), src.ambient());
        let mut c0 = 0;
        for &(p, q) in pieces {
            let w = cx.chain().cell_count(p);
            if let Some(pos) = tpieces.iter().position(|&(tp, tq)| tp == p && tq == q + period) {
                let r0: usize = tpieces[..pos].iter().map(|&(tp, _)| cx.chain().cell_count(tp)).sum();
                let k = ring.constant(q, period);
                for a in 0..w {
                    mat[(r0 + a, c0 + a)] = k.clone();
                }
            }
            c0 += w;
        }
        let i = induced_map(&mat, src, tgt)?;
        if !i.is_zero() {
            c.i.insert(m, i);
        }
    }
    Ok(c)
}
