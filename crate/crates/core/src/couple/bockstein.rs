use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use super::exact::{ExactCouple, Shifts};
use crate::error::{Error, Result};
use crate::exactlin::{induced_map, preimage_mod, FgGroup, GroupHom, IntMatrix, Subquotient};
use crate::simplicial::chain::{coboundary_matrix, cohomology, Cellular};
use crate::simplicial::cochain::{cup, Cochain};
use crate::ssengine::pairing::tabulate;
use crate::ssengine::{Bidegree, PageData, PagePairing};

/// Summary indexing for singly graded pages: degree `m` sits at `(0, -m)`.
pub fn summary_bidegree(m: i64) -> Bidegree {
    Bidegree::new(0, -m)
}

pub const SUMMARY_SHIFT: Bidegree = Bidegree { f: 0, c: -1 };

fn exact_div(v: Vec<BigInt>, n: &BigInt) -> Vec<BigInt> {
    v.into_iter()
        .map(|x| {
            let (q, r) = x.div_rem(n);
            assert!(r.is_zero(), "coboundary not divisible");
            q
        })
        .collect()
}

fn check_modulus(n: &BigInt) -> Result<()> {
    if *n < BigInt::from(2) {
        return Err(Error::InvalidComplex(format!("Bockstein modulus must be at least 2, got {n}")));
    }
    Ok(())
}

/// Integral Bockstein couple: `D^m = H^m(Z)`, `E^m = H^m(Z/n)`, `i = ×n`,
/// `j` reduction and `k[e] = [δe / n]` for an integral lift `e`.
pub fn bockstein_couple<C: Cellular + ?Sized>(cx: &C, n: &BigInt) -> Result<ExactCouple> {
    check_modulus(n)?;
    let chain = cx.chain();
    let dims = chain.len();
    let hz: Vec<Subquotient> = (0..dims).map(|m| cohomology(chain, m, &BigInt::zero())).collect();
    let hn: Vec<Subquotient> = (0..dims).map(|m| cohomology(chain, m, n)).collect();
    let mut c = ExactCouple {
        d: BTreeMap::new(),
        e: BTreeMap::new(),
        i: BTreeMap::new(),
        j: BTreeMap::new(),
        k: BTreeMap::new(),
        shifts: Shifts { i: 0, j: 0, k: 1 },
        periodic: false,
    };
    for m in 0..dims {
        let deg = m as i64;
        let cells = chain.cell_count(m);
        if !hz[m].group().is_trivial() {
            c.d.insert(deg, hz[m].group().clone());
            let i = induced_map(&IntMatrix::identity(cells).scale(n), &hz[m], &hz[m])?;
            if !i.is_zero() {
                c.i.insert(deg, i);
            }
            let j = induced_map(&IntMatrix::identity(cells), &hz[m], &hn[m])?;
            if !j.is_zero() {
                c.j.insert(deg, j);
            }
        }
        if !hn[m].group().is_trivial() {
            c.e.insert(deg, hn[m].group().clone());
            if m + 1 < dims {
                let d = coboundary_matrix(chain, m);
                let cols: Vec<Vec<BigInt>> = (0..hn[m].group().ngens())
                    .map(|g| {
                        let y = exact_div(d.mul_vec(&hn[m].representative(g)), n);
                        hz[m + 1].coords(&y).expect("integral cocycle")
                    })
                    .collect();
                let mat = IntMatrix::from_columns(hz[m + 1].group().ngens(), &cols);
                let k = GroupHom::new(hn[m].group().clone(), hz[m + 1].group().clone(), mat)?;
                if !k.is_zero() {
                    c.k.insert(deg, k);
                }
            }
        }
    }
    Ok(c)
}

/// `E_r^m` straight from cochains:
/// `{x : δx ∈ n^r C} / (n {x : δx ∈ n^{r-1} C} + {δy / n^{r-1} : δy ∈ n^{r-1} C})`.
pub fn direct_entry<C: Cellular + ?Sized>(cx: &C, n: &BigInt, r: usize, m: usize) -> Subquotient {
    let chain = cx.chain();
    let cells = chain.cell_count(m);
    let nr: BigInt = Pow::pow(n, r);
    let nr1: BigInt = Pow::pow(n, r - 1);
    let d = coboundary_matrix(chain, m);
    let num = preimage_mod(&d, &vec![nr; d.rows()]);
    let mut den = preimage_mod(&d, &vec![nr1.clone(); d.rows()]).scale(n);
    if m > 0 {
        let dm = coboundary_matrix(chain, m - 1);
        let ys = preimage_mod(&dm, &vec![nr1.clone(); dm.rows()]);
        let imgs: Vec<Vec<BigInt>> = ys.columns().iter().map(|y| exact_div(dm.mul_vec(y), &nr1)).collect();
        den = den.hstack(&IntMatrix::from_columns(cells, &imgs)).expect("row counts agree");
    }
    Subquotient::new(cells, &num, &den).expect("boundaries lie in cycles")
}

/// `d_r[x] = [δx / n^r]` on the direct entries.
pub fn direct_differential<C: Cellular + ?Sized>(cx: &C, n: &BigInt, r: usize, src: &Subquotient, tgt: &Subquotient, m: usize) -> Result<GroupHom> {
    let d = coboundary_matrix(cx.chain(), m);
    let nr: BigInt = Pow::pow(n, r);
    let cols: Vec<Vec<BigInt>> = (0..src.group().ngens())
        .map(|g| {
            let y = exact_div(d.mul_vec(&src.representative(g)), &nr);
            tgt.coords(&y).ok_or_else(|| Error::NotWellDefined(format!("d_{r} leaves the cycles in degree {}", m + 1)))
        })
        .collect::<Result<_>>()?;
    GroupHom::new(src.group().clone(), tgt.group().clone(), IntMatrix::from_columns(tgt.group().ngens(), &cols))
}

#[derive(Clone, Debug)]
pub struct BocksteinPages {
    pub modulus: BigInt,
    /// `pages[r - 1]` is `E_r` in summary indexing.
    pub pages: Vec<PageData>,
    /// Smallest `r` after which every differential vanishes.
    pub limit: usize,
    /// Whether each page computed by deriving the couple agrees with the
    /// direct cochain formula.
    pub cross_checked: bool,
    /// Whether the last computed page is `E_∞` (the derived `i` is injective).
    pub stable: bool,
}

impl BocksteinPages {
    pub fn e_infinity(&self) -> &PageData {
        self.pages.last().expect("at least one page")
    }
}

fn page_from_couple(c: &ExactCouple, r: usize, dims: usize) -> PageData {
    let mut groups = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for m in 0..dims as i64 {
        let g = c.e_group(m);
        if !g.is_trivial() {
            groups.insert(summary_bidegree(m), g);
        }
        let d = c.differential(m);
        if !d.is_zero() {
            differentials.insert(summary_bidegree(m), d);
        }
    }
    PageData {
        r,
        d_shift: SUMMARY_SHIFT,
        groups,
        differentials,
        exact: Some((0, dims as i64 - 1)),
        bounds: None,
    }
}

/// Bockstein pages `E_1, E_2, ...` by repeatedly deriving the couple, up to
/// `r_max` or until the derived `i` is injective.
pub fn bockstein_pages<C: Cellular + ?Sized>(cx: &C, n: &BigInt, r_max: usize) -> Result<BocksteinPages> {
    let dims = cx.chain().len();
    let mut couple = bockstein_couple(cx, n)?;
    let mut pages = Vec::new();
    let mut cross_checked = true;
    let mut stable = false;
    for r in 1..=r_max.max(1) {
        let data = page_from_couple(&couple, r, dims);
        for m in 0..dims {
            if direct_entry(cx, n, r, m).group() != &data.group(summary_bidegree(m as i64)) {
                cross_checked = false;
            }
        }
        pages.push(data);
        if couple.i_injective() {
            stable = true;
            break;
        }
        couple = couple.derive()?;
    }
    let last_nonzero = pages.iter().rposition(|p| !p.differentials.is_empty());
    let limit = last_nonzero.map_or(1, |i| i + 2).min(pages.len());
    Ok(BocksteinPages {
        modulus: n.clone(),
        pages,
        limit,
        cross_checked,
        stable,
    })
}

/// For prime `n`, `E_∞^m ≅ (H^m(Z) / torsion) ⊗ Z/n`.
pub fn free_part_matches<C: Cellular + ?Sized>(cx: &C, pages: &BocksteinPages) -> bool {
    let chain = cx.chain();
    let last = pages.e_infinity();
    (0..chain.len()).all(|m| {
        let rank = cohomology(chain, m, &BigInt::zero()).group().rank();
        let expected = FgGroup::from_orders(&vec![pages.modulus.clone(); rank]);
        last.group(summary_bidegree(m as i64)) == expected
    })
}

/// Direct `E_r` entries keyed by summary bidegree, with differentials.
pub fn direct_page<C: Cellular + ?Sized>(cx: &C, n: &BigInt, r: usize) -> Result<(BTreeMap<Bidegree, Subquotient>, PageData)> {
    check_modulus(n)?;
    let dims = cx.chain().len();
    let entries: Vec<Subquotient> = (0..dims).map(|m| direct_entry(cx, n, r, m)).collect();
    let mut differentials = BTreeMap::new();
    for m in 0..dims.saturating_sub(1) {
        let d = direct_differential(cx, n, r, &entries[m], &entries[m + 1], m)?;
        if !d.is_zero() {
            differentials.insert(summary_bidegree(m as i64), d);
        }
    }
    let map: BTreeMap<Bidegree, Subquotient> = entries
        .into_iter()
        .enumerate()
        .map(|(m, e)| (summary_bidegree(m as i64), e))
        .collect();
    let data = PageData {
        r,
        d_shift: SUMMARY_SHIFT,
        groups: map.iter().map(|(b, s)| (*b, s.group().clone())).collect(),
        differentials,
        exact: Some((0, dims as i64 - 1)),
        bounds: None,
    };
    Ok((map, data))
}

/// Cup pairing `E_r ⊗ E_r -> E_r` of the Bockstein spectral sequence of one
/// complex (products along the diagonal).
pub fn bockstein_pairing<C: Cellular + ?Sized>(cx: &C, n: &BigInt, r: usize) -> Result<PagePairing> {
    let (entries, data) = direct_page(cx, n, r)?;
    let tables = tabulate(&entries, &entries, &entries, |u, x, v, y| {
        let a = Cochain::new((-u.c) as usize, BigInt::zero(), x.to_vec());
        let b = Cochain::new((-v.c) as usize, BigInt::zero(), y.to_vec());
        cup(cx, &a, &b).values
    })?;
    Ok(PagePairing {
        left: data.clone(),
        right: data.clone(),
        target: data,
        tables,
    })
}
