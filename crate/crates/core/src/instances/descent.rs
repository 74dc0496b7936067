use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::FgGroup;
use crate::simplicial::chain::{cohomology_groups, delta_sign};
use crate::simplicial::complex::OrderedComplex;
use crate::ssengine::{Cell, FilteredCochainComplex};

/// Closed cover of a complex by subcomplexes.
#[derive(Clone, Debug)]
pub struct CoverData {
    base: OrderedComplex,
    pieces: Vec<OrderedComplex>,
}

impl CoverData {
    /// Pieces are given by their facets (simplices of `base`).
    pub fn new(base: OrderedComplex, pieces: &[Vec<Vec<usize>>]) -> Result<Self> {
        let mut subs = Vec::with_capacity(pieces.len());
        for (i, facets) in pieces.iter().enumerate() {
            let sub = base
                .subcomplex(facets)
                .map_err(|e| Error::NotACover(format!("piece {i}: {e}")))?;
            subs.push(sub);
        }
        for s in base.all_simplices() {
            if !subs.iter().any(|p| p.contains(s)) {
                return Err(Error::NotACover(format!("simplex {s:?} lies in no piece")));
            }
        }
        Ok(CoverData { base, pieces: subs })
    }

    pub fn base(&self) -> &OrderedComplex {
        &self.base
    }

    pub fn pieces(&self) -> &[OrderedComplex] {
        &self.pieces
    }

    /// Nonempty intersections `U_I` for index sets of size `m + 1`.
    pub fn intersections(&self, m: usize) -> Vec<(Vec<usize>, OrderedComplex)> {
        let mut out = Vec::new();
        for set in subsets(self.pieces.len(), m + 1) {
            let mut u = self.pieces[set[0]].clone();
            for &i in &set[1..] {
                u = u.intersection(&self.pieces[i]);
            }
            if u.dim().is_some() {
                out.push((set, u));
            }
        }
        out
    }

    /// Whether every piece has the cohomology of a point with coefficients `Z/modulus`.
    pub fn pieces_acyclic(&self, modulus: &BigInt) -> bool {
        self.pieces.iter().all(|p| is_acyclic(p, modulus))
    }
}

pub fn is_acyclic(k: &OrderedComplex, modulus: &BigInt) -> bool {
    let h = cohomology_groups(k.chain_complex(), modulus);
    let unit = if modulus.is_zero() {
        FgGroup::free(1)
    } else {
        FgGroup::cyclic(modulus.clone())
    };
    h.first() == Some(&unit) && h.iter().skip(1).all(FgGroup::is_trivial)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Čech double complex `⊕_{|I| = m+1} C^k(U_I; Z/modulus)`, cell `(I, σ)` in
/// filtration `m` and total degree `m + k`, with differential
/// `δ_Čech + (-1)^m δ`, where `(δ_Čech α)_J = Σ_j (-1)^j α_{J∖j_j}|U_J`.
pub fn build_descent(cover: &CoverData, modulus: &BigInt) -> Result<FilteredCochainComplex> {
    let base = cover.base();
    let mut cells = Vec::new();
    let mut lookup: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut levels = Vec::new();
    for m in 0..cover.pieces().len() {
        let inter = cover.intersections(m);
        if inter.is_empty() {
            break;
        }
        for (set, u) in &inter {
            for s in u.all_simplices() {
                lookup.insert((set.clone(), s.clone()), cells.len());
                let names: Vec<&str> = s.iter().map(|&v| base.vertices()[v].as_str()).collect();
                cells.push(Cell {
                    degree: (m + s.len() - 1) as i64,
                    filtration: m as i64,
                    modulus: modulus.clone(),
                    label: format!("{set:?}:{}", names.join("")),
                });
            }
        }
        levels.push(inter);
    }
    let mut entries = Vec::new();
    for (m, inter) in levels.iter().enumerate() {
        let column_sign: i64 = if m % 2 == 0 { 1 } else { -1 };
        for (set, u) in inter {
            for s in u.all_simplices() {
                let src = lookup[&(set.clone(), s.clone())];
                let k = s.len() - 1;
                // cochain differential within U_I: cofaces τ ⊃ s with τ ∈ U_I
                for t in u.simplices(k + 1) {
                    if let Some(pos) = face_position(t, s) {
                        let inc = if pos % 2 == 0 { 1 } else { -1 };
                        let v = column_sign * delta_sign(k) * inc;
                        entries.push((lookup[&(set.clone(), t.clone())], src, BigInt::from(v)));
                    }
                }
                // Čech differential: J = I ∪ {i}
                if let Some(next) = levels.get(m + 1) {
                    for (big, w) in next {
                        let Some(pos) = face_position(big, set) else { continue };
                        if !w.contains(s) {
                            continue;
                        }
                        let v = if pos % 2 == 0 { 1 } else { -1 };
                        entries.push((lookup[&(big.clone(), s.clone())], src, BigInt::from(v)));
                    }
                }
            }
        }
    }
    FilteredCochainComplex::new(cells, entries)
}

/// Position `j` with `big ∖ big[j] = small`, if `small` is a codimension-one face.
fn face_position(big: &[usize], small: &[usize]) -> Option<usize> {
    if big.len() != small.len() + 1 {
        return None;
    }
    (0..big.len()).find(|&j| big.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, v)| v).eq(small.iter()))
}
