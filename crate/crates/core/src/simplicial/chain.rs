use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{preimage_mod, FgGroup, IntMatrix, Subquotient};

/// Basis-labelled integer chain complex `C_0 <- C_1 <- ... <- C_top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntChainComplex {
    labels: Vec<Vec<String>>,
    /// `boundaries[n]` maps degree `n` to degree `n - 1`; `boundaries[0]` has no rows.
    boundaries: Vec<IntMatrix>,
}

impl IntChainComplex {
    /// Checks shapes and `∂∘∂ = 0`.
    pub fn new(labels: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if labels.len() != boundaries.len() {
            return Err(Error::InvalidComplex(
                "one boundary matrix per degree is required".into(),
            ));
        }
        for (n, b) in boundaries.iter().enumerate() {
            let rows = if n == 0 { 0 } else { labels[n - 1].len() };
            if b.cols() != labels[n].len() || b.rows() != rows {
                return Err(Error::InvalidComplex(format!(
                    "boundary in degree {n} has shape {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        for n in 2..boundaries.len() {
            if !boundaries[n - 1].mul(&boundaries[n])?.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "boundary squares to a nonzero map in degree {n}"
                )));
            }
        }
        Ok(IntChainComplex { labels, boundaries })
    }

    /// Number of degrees present (`top + 1`), 0 for the empty complex.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.labels.get(n).map_or(&[], Vec::as_slice)
    }

    /// `∂_n: C_n -> C_{n-1}`, with an empty matrix outside the stored range.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        if n < self.boundaries.len() {
            self.boundaries[n].clone()
        } else {
            IntMatrix::zeros(self.cell_count(n.wrapping_sub(1)), 0)
        }
    }

    pub fn boundary_ref(&self, n: usize) -> Option<&IntMatrix> {
        self.boundaries.get(n)
    }
}

/// A chain complex whose cells can be split into front and back faces,
/// which is all the cup product needs.
pub trait Cellular: Sync {
    fn chain(&self) -> &IntChainComplex;

    /// Front `p`-face and back `(n-p)`-face of cell `cell` in degree `n`.
    fn front_back(&self, n: usize, cell: usize, p: usize) -> (usize, usize);
}

/// Sign of the coboundary in degree `p`: `(δα)(c) = -(-1)^p α(∂c)`.
pub fn delta_sign(p: usize) -> i64 {
    if p.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// Matrix of `δ: C^p -> C^{p+1}` with the sign `-(-1)^p`.
pub fn coboundary_matrix(cx: &IntChainComplex, p: usize) -> IntMatrix {
    coboundary_matrix_signed(cx, p, delta_sign(p))
}

/// Transpose of `∂_{p+1}` scaled by `sign`.
pub fn coboundary_matrix_signed(cx: &IntChainComplex, p: usize, sign: i64) -> IntMatrix {
    match cx.boundary_ref(p + 1) {
        Some(b) => b.transpose().scale(&BigInt::from(sign)),
        None => IntMatrix::zeros(0, cx.cell_count(p)),
    }
}

fn scalar_block(n: usize, m: &BigInt) -> IntMatrix {
    if m.is_zero() {
        IntMatrix::zeros(n, 0)
    } else {
        IntMatrix::identity(n).scale(m)
    }
}

/// `H^p(C; Z/m)` (`m = 0` for `Z`) as a subquotient of `Z^{C_p}`.
pub fn cohomology(cx: &IntChainComplex, p: usize, modulus: &BigInt) -> Subquotient {
    let n = cx.cell_count(p);
    let d = coboundary_matrix(cx, p);
    let cycles = preimage_mod(&d, &vec![modulus.clone(); d.rows()]);
    let mut bounds = scalar_block(n, modulus);
    if p > 0 {
        bounds = coboundary_matrix(cx, p - 1)
            .hstack(&bounds)
            .expect("row counts agree");
    }
    Subquotient::new(n, &cycles, &bounds).expect("coboundaries are cocycles")
}

pub fn cohomology_groups(cx: &IntChainComplex, modulus: &BigInt) -> Vec<FgGroup> {
    (0..cx.len())
        .map(|p| cohomology(cx, p, modulus).group().clone())
        .collect()
}

/// `H_n(C; Z)` from the boundary matrices.
pub fn homology_groups(cx: &IntChainComplex) -> Vec<FgGroup> {
    (0..cx.len())
        .map(|n| {
            let cycles = crate::exactlin::kernel_basis(&cx.boundary(n));
            let bounds = match cx.boundary_ref(n + 1) {
                Some(b) => b.clone(),
                None => IntMatrix::zeros(cx.cell_count(n), 0),
            };
            Subquotient::new(cx.cell_count(n), &cycles, &bounds)
                .expect("boundaries are cycles")
                .group()
                .clone()
        })
        .collect()
}

/// Rank of `H^p(C; Z/p)` for a prime `p`, as a vector-space dimension.
pub fn mod_betti(cx: &IntChainComplex, prime: u64) -> Vec<usize> {
    let m = BigInt::from(prime);
    cohomology_groups(cx, &m)
        .iter()
        .map(|g| {
            debug_assert_eq!(g.rank(), 0);
            g.torsion().len()
        })
        .collect()
}
