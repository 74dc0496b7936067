use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;

/// Engine bidegree: filtration `f` and coefficient degree `c`, total degree `f - c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub f: i64,
    pub c: i64,
}

impl Bidegree {
    pub fn new(f: i64, c: i64) -> Self {
        Bidegree { f, c }
    }

    /// Bidegree of filtration `f` in total degree `n`.
    pub fn from_total(f: i64, n: i64) -> Self {
        Bidegree { f, c: f - n }
    }

    pub fn total(&self) -> i64 {
        self.f - self.c
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.f + o.f, self.c + o.c)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.f, self.c)
    }
}

/// One basis cell: total degree, filtration, and coefficient modulus (0 for `Z`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub degree: i64,
    pub filtration: i64,
    pub modulus: BigInt,
    pub label: String,
}

/// Bilinear chain-level product on basis cells: `(x cell, y cell) -> sparse target`.
pub type ProductFn = dyn Fn(usize, usize) -> Vec<(usize, BigInt)> + Send + Sync;

#[derive(Clone)]
pub struct ChainPairing {
    product: Arc<ProductFn>,
}

impl ChainPairing {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(usize, usize) -> Vec<(usize, BigInt)> + Send + Sync + 'static,
    {
        ChainPairing { product: Arc::new(f) }
    }

    pub fn apply(&self, x: usize, y: usize) -> Vec<(usize, BigInt)> {
        (self.product)(x, y)
    }
}

impl fmt::Debug for ChainPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainPairing")
    }
}

/// Finite cochain complex with a cell basis, a filtration that the
/// differential never lowers, and per-cell coefficients `Z` or `Z/m`.
///
/// Pages are exact only in the total degrees of `window`; builders that
/// truncate an infinite object (periodic coefficients) set it accordingly.
#[derive(Clone, Debug)]
pub struct FilteredCochainComplex {
    cells: Vec<Cell>,
    blocks: BTreeMap<i64, Vec<usize>>,
    position: Vec<usize>,
    columns: Vec<Vec<(usize, BigInt)>>,
    window: (i64, i64),
    product: Option<ChainPairing>,
}

impl FilteredCochainComplex {
    /// `entries` are `(target, source, coefficient)` triples of the differential.
    pub fn new(cells: Vec<Cell>, entries: Vec<(usize, usize, BigInt)>) -> Result<Self> {
        let lo = cells.iter().map(|c| c.degree).min().unwrap_or(0);
        let hi = cells.iter().map(|c| c.degree).max().unwrap_or(0);
        Self::with_window(cells, entries, (lo, hi))
    }

    pub fn with_window(cells: Vec<Cell>, entries: Vec<(usize, usize, BigInt)>, window: (i64, i64)) -> Result<Self> {
        let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut position = vec![0; cells.len()];
        for (i, c) in cells.iter().enumerate() {
            if c.modulus < BigInt::zero() || c.modulus == BigInt::from(1) {
                return Err(Error::InvalidFiltered(format!("cell {i} has modulus {}", c.modulus)));
            }
            let b = blocks.entry(c.degree).or_default();
            position[i] = b.len();
            b.push(i);
        }
        let mut acc: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); cells.len()];
        for (t, s, v) in entries {
            if t >= cells.len() || s >= cells.len() {
                return Err(Error::InvalidFiltered(format!("entry ({t},{s}) out of range")));
            }
            *acc[s].entry(t).or_insert_with(BigInt::zero) += v;
        }
        let mut columns = Vec::with_capacity(cells.len());
        for (s, col) in acc.into_iter().enumerate() {
            let mut col: Vec<(usize, BigInt)> = col
                .into_iter()
                .map(|(t, v)| {
                    let m = &cells[t].modulus;
                    let v = if m.is_zero() { v } else { v.mod_floor(m) };
                    (t, v)
                })
                .filter(|(_, v)| !v.is_zero())
                .collect();
            col.sort_by_key(|(t, _)| *t);
            for (t, v) in &col {
                if cells[*t].degree != cells[s].degree + 1 {
                    return Err(Error::InvalidFiltered(format!(
                        "differential entry from cell {s} (degree {}) to cell {t} (degree {})",
                        cells[s].degree, cells[*t].degree
                    )));
                }
                if cells[*t].filtration < cells[s].filtration {
                    return Err(Error::InvalidFiltered(format!(
                        "differential lowers filtration from cell {s} to cell {t}"
                    )));
                }
                let ms = &cells[s].modulus;
                let mt = &cells[*t].modulus;
                if !ms.is_zero() && !divides(mt, &(v * ms)) {
                    return Err(Error::InvalidFiltered(format!(
                        "differential from cell {s} does not respect its relation"
                    )));
                }
            }
            columns.push(col);
        }
        let cx = FilteredCochainComplex {
            cells,
            blocks,
            position,
            columns,
            window,
            product: None,
        };
        cx.check_square_zero()?;
        Ok(cx)
    }

    fn check_square_zero(&self) -> Result<()> {
        for s in 0..self.cells.len() {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (t, v) in &self.columns[s] {
                for (u, w) in &self.columns[*t] {
                    *acc.entry(*u).or_insert_with(BigInt::zero) += v * w;
                }
            }
            for (u, v) in acc {
                if !divides(&self.cells[u].modulus, &v) {
                    return Err(Error::InvalidFiltered(format!(
                        "d∘d is nonzero on cell {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn set_product(&mut self, product: ChainPairing) -> Result<()> {
        check_pairing(self, self, self, &product)?;
        self.product = Some(product);
        Ok(())
    }

    pub fn product(&self) -> Option<&ChainPairing> {
        self.product.as_ref()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn in_window(&self, n: i64) -> bool {
        self.window.0 <= n && n <= self.window.1
    }

    /// Degrees in which pages are exact: `None` when no cell lies outside the
    /// window (every other degree is then zero), else the window.
    pub fn exact_degrees(&self) -> Option<(i64, i64)> {
        let (lo, hi) = self.window;
        let outside = self.blocks.range(..lo).next().is_some() || self.blocks.range(hi + 1..).next().is_some();
        outside.then_some(self.window)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.blocks.keys().copied().filter(|&n| self.in_window(n)).collect()
    }

    pub fn block(&self, n: i64) -> &[usize] {
        self.blocks.get(&n).map_or(&[], Vec::as_slice)
    }

    /// Position of a cell inside its degree block.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn column(&self, i: usize) -> &[(usize, BigInt)] {
        &self.columns[i]
    }

    pub fn moduli(&self, n: i64) -> Vec<BigInt> {
        self.block(n).iter().map(|&i| self.cells[i].modulus.clone()).collect()
    }

    pub fn filtrations(&self, n: i64) -> Vec<i64> {
        self.block(n).iter().map(|&i| self.cells[i].filtration).collect()
    }

    /// `(min, max)` filtration over the window degrees.
    pub fn filtration_range(&self) -> Option<(i64, i64)> {
        let fs: Vec<i64> = self
            .degrees()
            .iter()
            .flat_map(|&n| self.filtrations(n))
            .collect();
        Some((*fs.iter().min()?, *fs.iter().max()?))
    }

    /// Block matrix of `d: degree n -> degree n+1`.
    pub fn d_matrix(&self, n: i64) -> IntMatrix {
        let src = self.block(n);
        let tgt = self.block(n + 1);
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (j, &s) in src.iter().enumerate() {
            for (t, v) in &self.columns[s] {
                m[(self.position[*t], j)] = v.clone();
            }
        }
        m
    }

    /// Relation lattice of degree `n`, as columns.
    pub fn relations(&self, n: i64) -> IntMatrix {
        let ms = self.moduli(n);
        let cols: Vec<Vec<BigInt>> = ms
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut c = vec![BigInt::zero(); ms.len()];
                c[i] = m.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(ms.len(), &cols)
    }

    /// Sparse product of block vectors `x` (degree `nx` of `self`) and `y`
    /// (degree `ny` of `right`) into the block of degree `nx + ny` of `target`.
    pub fn multiply_blocks(
        &self,
        right: &FilteredCochainComplex,
        target: &FilteredCochainComplex,
        pairing: &ChainPairing,
        nx: i64,
        x: &[BigInt],
        ny: i64,
        y: &[BigInt],
    ) -> Vec<BigInt> {
        let nw = nx + ny;
        let mut out = vec![BigInt::zero(); target.block(nw).len()];
        let bx = self.block(nx);
        let by = right.block(ny);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for (k, v) in pairing.apply(bx[a], by[b]) {
                    if target.cells[k].degree != nw {
                        continue;
                    }
                    out[target.position[k]] += v * xa * yb;
                }
            }
        }
        for (o, m) in out.iter_mut().zip(target.moduli(nw)) {
            if !m.is_zero() {
                *o = o.mod_floor(&m);
            }
        }
        out
    }
}

fn divides(m: &BigInt, v: &BigInt) -> bool {
    if m.is_zero() {
        v.is_zero()
    } else {
        v.is_multiple_of(m)
    }
}

fn add_into(acc: &mut HashMap<usize, BigInt>, k: usize, v: BigInt) {
    *acc.entry(k).or_insert_with(BigInt::zero) += v;
}

/// Checks that a chain pairing `left ⊗ right -> target` respects degrees,
/// relations and filtrations, and satisfies
/// `d(xy) = (dx)y + (-1)^{|x|} x(dy)` on basis cells whose products stay inside
/// the target window.
pub fn check_pairing(
    left: &FilteredCochainComplex,
    right: &FilteredCochainComplex,
    target: &FilteredCochainComplex,
    pairing: &ChainPairing,
) -> Result<()> {
    for i in 0..left.len() {
        for j in 0..right.len() {
            let (ci, cj) = (&left.cells[i], &right.cells[j]);
            for (k, v) in pairing.apply(i, j) {
                let ck = &target.cells[k];
                if ck.degree != ci.degree + cj.degree {
                    return Err(Error::DimensionMismatch(format!(
                        "product of cells {i} and {j} lands in degree {}",
                        ck.degree
                    )));
                }
                if ck.filtration < ci.filtration + cj.filtration {
                    return Err(Error::NotFiltrationAdditive(format!(
                        "cells {} and {} multiply into {}",
                        ci.label, cj.label, ck.label
                    )));
                }
                for m in [&ci.modulus, &cj.modulus] {
                    if !m.is_zero() && !divides(&ck.modulus, &(&v * m)) {
                        return Err(Error::NotWellDefined(format!(
                            "product of {} and {} does not respect relations",
                            ci.label, cj.label
                        )));
                    }
                }
            }
        }
    }
    for i in 0..left.len() {
        for j in 0..right.len() {
            let n = left.cells[i].degree + right.cells[j].degree;
            if !target.in_window(n) || !target.in_window(n + 1) {
                continue;
            }
            let mut lhs: HashMap<usize, BigInt> = HashMap::new();
            for (k, v) in pairing.apply(i, j) {
                for (t, w) in &target.columns[k] {
                    add_into(&mut lhs, *t, &v * w);
                }
            }
            let mut rhs: HashMap<usize, BigInt> = HashMap::new();
            for (a, v) in &left.columns[i] {
                for (k, w) in pairing.apply(*a, j) {
                    add_into(&mut rhs, k, v * w);
                }
            }
            let sign = if left.cells[i].degree.rem_euclid(2) == 0 { 1 } else { -1 };
            for (b, v) in &right.columns[j] {
                for (k, w) in pairing.apply(i, *b) {
                    add_into(&mut rhs, k, v * w * sign);
                }
            }
            for k in lhs.keys().chain(rhs.keys()) {
                let diff = lhs.get(k).cloned().unwrap_or_default() - rhs.get(k).cloned().unwrap_or_default();
                if !divides(&target.cells[*k].modulus, &diff) {
                    return Err(Error::NotDerivation(format!(
                        "cells {} and {} at {}",
                        left.cells[i].label, right.cells[j].label, target.cells[*k].label
                    )));
                }
            }
        }
    }
    Ok(())
}
