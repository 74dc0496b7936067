//! Smith normal form with unimodular transforms, and the lattice operations
//! built on it (kernels, images, preimages, integer solving).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with a
/// positive divisibility chain `d[0] | d[1] | ... | d[rank-1]`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
    pub source_rows: usize,
    pub source_cols: usize,
}

impl SmithDecomposition {
    /// Nonzero invariant factors in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Re-checks every structural invariant by exact arithmetic.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let lhs = match self.u.mul(a).and_then(|ua| ua.mul(&self.v)) {
            Ok(m) => m,
            Err(_) => return false,
        };
        if lhs != self.d {
            return false;
        }
        let m = self.source_rows;
        let n = self.source_cols;
        if self.u.mul(&self.u_inv).ok() != Some(IntMatrix::identity(m))
            || self.v.mul(&self.v_inv).ok() != Some(IntMatrix::identity(n))
        {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                let x = &self.d[(i, j)];
                if i != j && !x.is_zero() {
                    return false;
                }
                if i == j && i >= self.rank && !x.is_zero() {
                    return false;
                }
            }
        }
        let factors = self.invariant_factors();
        if factors.iter().any(|x| !x.is_positive()) {
            return false;
        }
        factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += q * row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        self.d.add_row_multiple(target, source, q);
        self.u.add_row_multiple(target, source, q);
        self.u_inv.add_col_multiple(source, target, &-q);
    }

    /// col[target] += q * col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        self.d.add_col_multiple(target, source, q);
        self.v.add_col_multiple(target, source, q);
        self.v_inv.add_row_multiple(source, target, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major order.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if ax.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|b| ax < b.2) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn reduce_at(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.min_pivot(t) else {
            return false;
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        let (m, n) = (self.d.rows(), self.d.cols());
        loop {
            let mut residue = false;
            for i in t + 1..m {
                if self.d[(i, t)].is_zero() {
                    continue;
                }
                let q = &self.d[(i, t)] / &self.d[(t, t)];
                self.add_row(i, t, &-q);
                residue |= !self.d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if self.d[(t, j)].is_zero() {
                    continue;
                }
                let q = &self.d[(t, j)] / &self.d[(t, t)];
                self.add_col(j, t, &-q);
                residue |= !self.d[(t, j)].is_zero();
            }
            if residue {
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..m {
                    let x = self.d[(i, t)].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                        best = Some((true, i, x));
                    }
                }
                for j in t + 1..n {
                    let x = self.d[(t, j)].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                        best = Some((false, j, x));
                    }
                }
                if let Some((is_row, k, _)) = best {
                    if is_row {
                        self.swap_rows(t, k);
                    } else {
                        self.swap_cols(t, k);
                    }
                }
                continue;
            }
            let pivot = self.d[(t, t)].clone();
            let mut offender = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !self.d[(i, j)].is_multiple_of(&pivot) {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.d[(t, t)].is_negative() {
            self.negate_row(t);
        }
        true
    }
}

/// Smith normal form of an arbitrary integer matrix. Deterministic: the pivot
/// is always the first entry of minimal absolute value in row-major order.
pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    while rank < m.min(n) && r.reduce_at(rank) {
        rank += 1;
    }
    SmithDecomposition {
        u: r.u,
        u_inv: r.u_inv,
        d: r.d,
        v: r.v,
        v_inv: r.v_inv,
        rank,
        source_rows: m,
        source_cols: n,
    }
}

/// Basis of the integer kernel `{x : a x = 0}` as columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_cols(&idx)
}

/// Basis of the column span of `gens` (a lattice in Z^rows) as columns.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let s = smith(gens);
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let di = &s.d[(i, i)];
        cols.push(s.u_inv.column(i).into_iter().map(|x| x * di).collect());
    }
    IntMatrix::from_columns(gens.rows(), &cols)
}

/// Integer solution of `a x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith(a), b)
}

/// Integer solve reusing a precomputed decomposition of `a`.
pub fn solve_with(s: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), s.source_rows, "right-hand side length");
    let w = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); s.source_cols];
    for (i, wi) in w.iter().enumerate() {
        if i < s.rank {
            let (q, r) = wi.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Generators (as a lattice basis) of `{x in Z^n : a x in span(g)}`.
pub fn preimage(a: &IntMatrix, g: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let combined = a.hstack(&g.scale(&BigInt::from(-1))).expect("row counts agree");
    let ker = kernel_basis(&combined);
    let idx: Vec<usize> = (0..n).collect();
    let projected = ker.select_rows(&idx);
    lattice_basis(&projected)
}

/// Generators of `{x in Z^n : (a x)_i ≡ 0 mod moduli[i]}`; modulus 0 means equality.
pub fn preimage_mod(a: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    assert_eq!(a.rows(), moduli.len(), "one modulus per row");
    let cols: Vec<Vec<BigInt>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut c = vec![BigInt::zero(); a.rows()];
            c[i] = m.clone();
            c
        })
        .collect();
    let g = IntMatrix::from_columns(a.rows(), &cols);
    preimage(a, &g)
}

/// Whether `x` lies in the column span of `gens`.
pub fn in_span(gens: &IntMatrix, x: &[BigInt]) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    solve(gens, x).is_some()
}
