use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::simplicial::chain::{delta_sign, Cellular};
use crate::ssengine::{Cell, ChainPairing, FilteredCochainComplex};

/// Global numbering of the cells of a [`Cellular`] complex, degree by degree.
#[derive(Clone, Debug)]
pub struct CellIndex {
    offsets: Vec<usize>,
}

impl CellIndex {
    pub fn new<C: Cellular + ?Sized>(cx: &C) -> Self {
        let mut offsets = vec![0];
        for p in 0..cx.chain().len() {
            offsets.push(offsets[p] + cx.chain().cell_count(p));
        }
        CellIndex { offsets }
    }

    pub fn global(&self, p: usize, i: usize) -> usize {
        self.offsets[p] + i
    }

    /// `(dimension, index)` of a global cell id.
    pub fn local(&self, g: usize) -> (usize, usize) {
        let p = self.offsets.partition_point(|&o| o <= g) - 1;
        (p, g - self.offsets[p])
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn dims(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// `(p, s, front, back) -> cells of dimension p + s` whose front `p`-face and
/// back `s`-face are the given cells.
pub type SplitTable = HashMap<(usize, usize, usize, usize), Vec<usize>>;

pub fn split_table<C: Cellular + ?Sized>(cx: &C) -> SplitTable {
    let mut t: SplitTable = HashMap::new();
    for n in 0..cx.chain().len() {
        for cell in 0..cx.chain().cell_count(n) {
            for p in 0..=n {
                let (f, b) = cx.front_back(n, cell, p);
                t.entry((p, n - p, f, b)).or_default().push(cell);
            }
        }
    }
    t
}

/// Cochains of `cx` with coefficients `Z/modulus` (`0` for `Z`), cell
/// `(p, i)` in filtration `filt(p, i)`, coboundary `-(-1)^p α∂`.
pub fn filtered_cochains<C, F>(cx: &C, modulus: &BigInt, filt: F) -> Result<(FilteredCochainComplex, CellIndex)>
where
    C: Cellular + ?Sized,
    F: Fn(usize, usize) -> i64,
{
    let idx = CellIndex::new(cx);
    let chain = cx.chain();
    let mut cells = Vec::with_capacity(idx.total());
    for p in 0..chain.len() {
        for (i, label) in chain.labels(p).iter().enumerate() {
            cells.push(Cell {
                degree: p as i64,
                filtration: filt(p, i),
                modulus: modulus.clone(),
                label: label.clone(),
            });
        }
    }
    let mut entries = Vec::new();
    for p in 1..chain.len() {
        let b = chain.boundary_ref(p).expect("stored degree");
        let sign = BigInt::from(delta_sign(p - 1));
        for face in 0..b.rows() {
            for coface in 0..b.cols() {
                let v = &b[(face, coface)];
                if !v.is_zero() {
                    entries.push((idx.global(p, coface), idx.global(p - 1, face), v * &sign));
                }
            }
        }
    }
    Ok((FilteredCochainComplex::new(cells, entries)?, idx))
}

/// Cup product `(-1)^{ps} α(front) β(back)` on basis cochains, as a chain pairing
/// of a cochain complex built by [`filtered_cochains`] with itself.
pub fn cup_pairing<C: Cellular + ?Sized>(cx: &C, idx: &CellIndex) -> ChainPairing {
    let table = Arc::new(split_table(cx));
    let idx = idx.clone();
    ChainPairing::new(move |x, y| {
        let (p, a) = idx.local(x);
        let (s, b) = idx.local(y);
        let sign = if p * s % 2 == 0 { 1 } else { -1 };
        table
            .get(&(p, s, a, b))
            .map(|cells| {
                cells
                    .iter()
                    .map(|&c| (idx.global(p + s, c), BigInt::from(sign)))
                    .collect()
            })
            .unwrap_or_default()
    })
}
