use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::{check_pairing, Bidegree, ChainPairing, FilteredCochainComplex};
use super::page::{page, Page, PageData};
use crate::error::{Error, Result};
use crate::exactlin::{GroupHom, Subquotient};
use crate::graded::signs::{Mod2Poly, SignFamily};

/// `[i][j]` = coordinates of `generator_i · generator_j` in the target group.
pub type ProductTable = Vec<Vec<Vec<BigInt>>>;

/// Pairing `left × right -> target` of pages, tabulated on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PagePairing {
    pub left: PageData,
    pub right: PageData,
    pub target: PageData,
    pub tables: BTreeMap<(Bidegree, Bidegree), ProductTable>,
}

impl PagePairing {
    /// Product of `x ∈ left(u)` and `y ∈ right(v)`, or `None` when the degree
    /// of `u + v` is not known exactly on the target page.
    pub fn multiply(&self, u: Bidegree, x: &[BigInt], v: Bidegree, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = u + v;
        if !self.target.is_exact(w) {
            return None;
        }
        let tg = &self.target.group(w);
        let mut out = vec![BigInt::zero(); tg.ngens()];
        if let Some(table) = self.tables.get(&(u, v)) {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    for (o, t) in out.iter_mut().zip(&table[i][j]) {
                        *o += xi * yj * t;
                    }
                }
            }
        }
        tg.reduce(&mut out);
        Some(out)
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(1);
    v
}

/// Tabulates a chain-level product on explicit subquotient entries, checking
/// that it carries numerators into numerators and kills denominators.
pub fn tabulate<F>(
    left: &BTreeMap<Bidegree, Subquotient>,
    right: &BTreeMap<Bidegree, Subquotient>,
    target: &BTreeMap<Bidegree, Subquotient>,
    product: F,
) -> Result<BTreeMap<(Bidegree, Bidegree), ProductTable>>
where
    F: Fn(Bidegree, &[BigInt], Bidegree, &[BigInt]) -> Vec<BigInt> + Sync,
{
    let pairs: Vec<(Bidegree, Bidegree)> = left
        .iter()
        .filter(|(_, s)| !s.group().is_trivial())
        .flat_map(|(u, _)| {
            right
                .iter()
                .filter(|(_, s)| !s.group().is_trivial())
                .map(move |(v, _)| (*u, *v))
        })
        .filter(|(u, v)| target.contains_key(&(*u + *v)))
        .collect();
    pairs
        .par_iter()
        .map(|&(u, v)| {
            let (a, b, t) = (&left[&u], &right[&v], &target[&(u + v)]);
            let ctx = |what: &str| format!("{what} at {u} x {v}");
            for i in 0..a.numerator().cols() {
                let x = a.numerator().column(i);
                for j in 0..b.numerator().cols() {
                    let z = product(u, &x, v, &b.numerator().column(j));
                    if !t.contains(&z) {
                        return Err(Error::NotWellDefined(ctx("product leaves the target cycles")));
                    }
                }
                for j in 0..b.denominator().cols() {
                    let z = product(u, &x, v, &b.denominator().column(j));
                    if t.is_zero_class(&z) != Some(true) {
                        return Err(Error::NotWellDefined(ctx("product with a right boundary is nonzero")));
                    }
                }
            }
            for i in 0..a.denominator().cols() {
                let x = a.denominator().column(i);
                for j in 0..b.numerator().cols() {
                    let z = product(u, &x, v, &b.numerator().column(j));
                    if t.is_zero_class(&z) != Some(true) {
                        return Err(Error::NotWellDefined(ctx("product with a left boundary is nonzero")));
                    }
                }
            }
            let table: ProductTable = (0..a.group().ngens())
                .map(|i| {
                    let x = a.representative(i);
                    (0..b.group().ngens())
                        .map(|j| {
                            let z = product(u, &x, v, &b.representative(j));
                            t.coords(&z).expect("checked above")
                        })
                        .collect()
                })
                .collect();
            Ok(((u, v), table))
        })
        .collect()
}

/// Induced pairing on `E_r` of a filtration-additive derivation pairing
/// `left ⊗ right -> target`.
pub fn page_pairing(
    left: &FilteredCochainComplex,
    right: &FilteredCochainComplex,
    target: &FilteredCochainComplex,
    pairing: &ChainPairing,
    r: usize,
) -> Result<PagePairing> {
    check_pairing(left, right, target, pairing)?;
    let (pl, pr, pt) = (page(left, r), page(right, r), page(target, r));
    pairing_on_pages(left, right, target, pairing, &pl, &pr, &pt)
}

/// As [`page_pairing`] with pages already computed and the chain pairing already checked.
pub fn pairing_on_pages(
    left: &FilteredCochainComplex,
    right: &FilteredCochainComplex,
    target: &FilteredCochainComplex,
    pairing: &ChainPairing,
    pl: &Page,
    pr: &Page,
    pt: &Page,
) -> Result<PagePairing> {
    let tables = tabulate(pl.entries(), pr.entries(), pt.entries(), |u, x, v, y| {
        left.multiply_blocks(right, target, pairing, u.total(), x, v.total(), y)
    })?;
    Ok(PagePairing {
        left: pl.data(),
        right: pr.data(),
        target: pt.data(),
        tables,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeibnizFailure {
    pub left: Bidegree,
    pub i: usize,
    pub right: Bidegree,
    pub j: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeibnizReport {
    pub checked: usize,
    /// Generator pairs whose products or differentials leave the computed range.
    pub skipped: usize,
    pub failures: Vec<LeibnizFailure>,
}

impl LeibnizReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sign_for(n: i64) -> BigInt {
    BigInt::from(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Checks `d(xy) = d(x) y + (-1)^{|x|} x d(y)` on all generator pairs, using
/// only the tabulated data.
pub fn leibniz_check(pp: &PagePairing) -> LeibnizReport {
    let mut rep = LeibnizReport::default();
    let shift = pp.target.d_shift;
    for (u, gu) in pp.left.nonzero() {
        for (v, gv) in pp.right.nonzero() {
            let w = *u + *v;
            for i in 0..gu.ngens() {
                let x = unit(gu.ngens(), i);
                for j in 0..gv.ngens() {
                    let y = unit(gv.ngens(), j);
                    let lhs = pp
                        .multiply(*u, &x, *v, &y)
                        .and_then(|z| pp.target.differential(w, &z));
                    let a = pp
                        .left
                        .differential(*u, &x)
                        .and_then(|dx| pp.multiply(*u + pp.left.d_shift, &dx, *v, &y));
                    let b = pp
                        .right
                        .differential(*v, &y)
                        .and_then(|dy| pp.multiply(*u, &x, *v + pp.right.d_shift, &dy));
                    let (Some(lhs), Some(a), Some(b)) = (lhs, a, b) else {
                        rep.skipped += 1;
                        continue;
                    };
                    let tg = pp.target.group(w + shift);
                    let s = sign_for(u.total());
                    let mut diff: Vec<BigInt> = lhs
                        .iter()
                        .zip(a.iter().zip(&b))
                        .map(|(l, (a, b))| l - a - &s * b)
                        .collect();
                    rep.checked += 1;
                    if !tg.is_zero_element(&{
                        tg.reduce(&mut diff);
                        diff
                    }) {
                        rep.failures.push(LeibnizFailure {
                            left: *u,
                            i,
                            right: *v,
                            j,
                        });
                    }
                }
            }
        }
    }
    rep
}

/// Identification of the three pages of one pairing with those of another.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Identification {
    pub left: BTreeMap<Bidegree, GroupHom>,
    pub right: BTreeMap<Bidegree, GroupHom>,
    pub target: BTreeMap<Bidegree, GroupHom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCounterexample {
    pub left: Bidegree,
    pub i: usize,
    pub right: Bidegree,
    pub j: usize,
    pub expected: Vec<BigInt>,
    pub found: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub checked: usize,
    /// Why the comparison could not even start (mismatched groups, non-iso identification).
    pub obstruction: Option<String>,
    pub counterexample: Option<IsoCounterexample>,
}

impl IsoVerdict {
    fn blocked(reason: String) -> Self {
        IsoVerdict {
            isomorphic: false,
            checked: 0,
            obstruction: Some(reason),
            counterexample: None,
        }
    }
}

fn identity_identification(a: &PageData, b: &PageData, side: &str) -> std::result::Result<BTreeMap<Bidegree, GroupHom>, String> {
    let mut out = BTreeMap::new();
    for (k, g) in a.nonzero() {
        let h = b.group(*k);
        if *g != h {
            return Err(format!("{side} groups differ at {k}: {g} vs {h}"));
        }
        out.insert(*k, GroupHom::identity(g));
    }
    for (k, g) in b.nonzero() {
        if a.group(*k).is_trivial() {
            return Err(format!("{side} groups differ at {k}: 0 vs {g}"));
        }
    }
    Ok(out)
}

fn check_maps(maps: &BTreeMap<Bidegree, GroupHom>, a: &PageData, b: &PageData, side: &str) -> std::result::Result<(), String> {
    for (k, g) in a.nonzero() {
        let Some(m) = maps.get(k) else {
            return Err(format!("no {side} identification at {k}"));
        };
        if m.source() != g || *m.target() != b.group(*k) || !m.is_iso() {
            return Err(format!("{side} identification at {k} is not an isomorphism"));
        }
    }
    for (k, g) in b.nonzero() {
        if a.group(*k).is_trivial() {
            return Err(format!("{side} groups differ at {k}: 0 vs {g}"));
        }
    }
    Ok(())
}

/// Decides whether `a` and `b` agree under the identification twisted by
/// `family`: `ε(w) φ(x·y) = (-1)^{twist(u,v)} (ε(u) φx)·(ε(v) φy)`, with `twist`
/// a polynomial in `(f1, c1, f2, c2)`. Without an identification, groups must
/// agree in normal form and the identity is used.
pub fn compare_global_iso(
    a: &PagePairing,
    b: &PagePairing,
    identification: Option<&Identification>,
    family: &SignFamily,
    twist: &Mod2Poly,
) -> IsoVerdict {
    let id = match identification {
        Some(id) => {
            for (maps, pa, pb, side) in [
                (&id.left, &a.left, &b.left, "left"),
                (&id.right, &a.right, &b.right, "right"),
                (&id.target, &a.target, &b.target, "target"),
            ] {
                if let Err(e) = check_maps(maps, pa, pb, side) {
                    return IsoVerdict::blocked(e);
                }
            }
            id.clone()
        }
        None => {
            let built = (|| {
                Ok::<_, String>(Identification {
                    left: identity_identification(&a.left, &b.left, "left")?,
                    right: identity_identification(&a.right, &b.right, "right")?,
                    target: identity_identification(&a.target, &b.target, "target")?,
                })
            })();
            match built {
                Ok(i) => i,
                Err(e) => return IsoVerdict::blocked(e),
            }
        }
    };
    let eps = |k: Bidegree| BigInt::from(family.eval(k.f, k.c));
    let mut checked = 0;
    for (u, gu) in a.left.nonzero() {
        for (v, gv) in a.right.nonzero() {
            let w = *u + *v;
            if !b.target.is_exact(w) {
                continue;
            }
            let tg = &b.target.group(w);
            let tw = BigInt::from(twist.sign(&[u.f, u.c, v.f, v.c]));
            for i in 0..gu.ngens() {
                let x = unit(gu.ngens(), i);
                let phx: Vec<BigInt> = id.left[u].apply(&x).iter().map(|t| t * eps(*u)).collect();
                for j in 0..gv.ngens() {
                    let y = unit(gv.ngens(), j);
                    let phy: Vec<BigInt> = id.right[v].apply(&y).iter().map(|t| t * eps(*v)).collect();
                    let Some(prod) = a.multiply(*u, &x, *v, &y) else {
                        continue;
                    };
                    let mut expected: Vec<BigInt> = match id.target.get(&w) {
                        Some(m) => m.apply(&prod).iter().map(|t| t * eps(w)).collect(),
                        None => vec![BigInt::zero(); tg.ngens()],
                    };
                    let mut found: Vec<BigInt> = b
                        .multiply(*u, &phx, *v, &phy)
                        .expect("target present")
                        .iter()
                        .map(|t| t * &tw)
                        .collect();
                    tg.reduce(&mut expected);
                    tg.reduce(&mut found);
                    checked += 1;
                    if expected != found {
                        return IsoVerdict {
                            isomorphic: false,
                            checked,
                            obstruction: None,
                            counterexample: Some(IsoCounterexample {
                                left: *u,
                                i,
                                right: *v,
                                j,
                                expected,
                                found,
                            }),
                        };
                    }
                }
            }
        }
    }
    IsoVerdict {
        isomorphic: true,
        checked,
        obstruction: None,
        counterexample: None,
    }
}

/// Page data of a family of groups with no differentials (a cohomology ring).
pub fn static_page(
    r: usize,
    d_shift: Bidegree,
    entries: &BTreeMap<Bidegree, Subquotient>,
    exact: Option<(i64, i64)>,
    bounds: Option<(Bidegree, Bidegree)>,
) -> PageData {
    PageData {
        r,
        d_shift,
        groups: entries.iter().map(|(k, s)| (*k, s.group().clone())).collect(),
        differentials: BTreeMap::new(),
        exact,
        bounds,
    }
}
