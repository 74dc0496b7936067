use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::smith::{preimage_mod, smith};
use super::subquotient::Subquotient;
use crate::error::{Error, Result};

/// Finitely generated abelian group in normal form
/// `Z/t_1 + ... + Z/t_k + Z^rank` with `t_1 | t_2 | ...` and every `t_i >= 2`.
///
/// The standard generators are ordered torsion first, then free. Every
/// [`GroupHom`] is written in these coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FgGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for t in &torsion {
            if *t < BigInt::from(2) {
                return Err(Error::DimensionMismatch(format!(
                    "torsion coefficient {t} is below 2"
                )));
            }
        }
        if !torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])) {
            return Err(Error::DimensionMismatch(
                "torsion coefficients do not form a divisibility chain".into(),
            ));
        }
        Ok(FgGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`, with `n = 0` meaning `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_orders(&[n.into()])
    }

    /// Direct sum of cyclic groups of the given orders (0 for `Z`), normalized.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let diag = IntMatrix::diagonal(orders);
        cokernel(&diag)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of standard generators.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Order of each standard generator, 0 for free ones.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat_n(BigInt::zero(), self.rank));
        m
    }

    /// Relation lattice of the standard presentation, as columns.
    pub fn relations(&self) -> IntMatrix {
        let n = self.ngens();
        let cols: Vec<Vec<BigInt>> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = t.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// Reduces coordinates into `[0, t_i)` on the torsion generators.
    pub fn reduce(&self, x: &mut [BigInt]) {
        for (xi, t) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.mod_floor(t);
        }
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter().zip(self.moduli()).all(|(xi, m)| {
            if m.is_zero() {
                xi.is_zero()
            } else {
                xi.is_multiple_of(&m)
            }
        })
    }

    pub fn direct_sum(&self, other: &FgGroup) -> FgGroup {
        let mut orders = self.moduli();
        orders.extend(other.moduli());
        FgGroup::from_orders(&orders)
    }

    pub fn direct_sum_all<'a>(groups: impl IntoIterator<Item = &'a FgGroup>) -> FgGroup {
        let orders: Vec<BigInt> = groups.into_iter().flat_map(|g| g.moduli()).collect();
        FgGroup::from_orders(&orders)
    }

    /// `self ⊗ Z/n`.
    pub fn tensor_mod(&self, n: &BigInt) -> FgGroup {
        let orders: Vec<BigInt> = self.moduli().iter().map(|m| m.gcd(n)).collect();
        FgGroup::from_orders(&orders)
    }

    /// Compact text form such as `Z^2+Z/2+Z/4`, or `0`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// `Z^rows / image(a)` in normal form.
pub fn cokernel(a: &IntMatrix) -> FgGroup {
    let s = smith(a);
    let mut torsion = Vec::new();
    for d in s.invariant_factors() {
        if !d.is_one() {
            torsion.push(d);
        }
    }
    FgGroup {
        rank: a.rows() - s.rank,
        torsion,
    }
}

/// Homomorphism between groups in normal form, written in standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    source: FgGroup,
    target: FgGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that relations map to relations and reduces the entries.
    pub fn new(source: FgGroup, target: FgGroup, mut matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        let tmod = target.moduli();
        for (j, sm) in source.moduli().iter().enumerate() {
            if sm.is_zero() {
                continue;
            }
            for (i, tm) in tmod.iter().enumerate() {
                let v = &matrix[(i, j)] * sm;
                let ok = if tm.is_zero() {
                    v.is_zero()
                } else {
                    v.is_multiple_of(tm)
                };
                if !ok {
                    return Err(Error::RelationViolation(format!(
                        "generator {j} of order {sm} maps to an element of infinite or incompatible order"
                    )));
                }
            }
        }
        for (i, tm) in tmod.iter().enumerate() {
            matrix.reduce_row_mod(i, tm);
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FgGroup, target: &FgGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FgGroup {
        &self.source
    }

    pub fn target(&self) -> &FgGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.target.reduce(&mut y);
        y
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        let m = self.matrix.mul(&inner.matrix)?;
        GroupHom::new(inner.source.clone(), self.target.clone(), m)
    }

    pub fn scale(&self, s: &BigInt) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.scale(s))
            .expect("multiples of a homomorphism are homomorphisms")
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("sum of maps with different ends".into()));
        }
        let entries = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a + b)
            .collect();
        let m = IntMatrix::from_entries(self.matrix.rows(), self.matrix.cols(), entries)?;
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Lattice in source coordinates mapping into the target relations.
    /// Always contains the source relations.
    pub fn kernel_lattice(&self) -> IntMatrix {
        preimage_mod(&self.matrix, &self.target.moduli())
    }

    /// Image lattice in target coordinates, target relations included.
    pub fn image_lattice(&self) -> IntMatrix {
        self.matrix
            .hstack(&self.target.relations())
            .expect("row counts agree")
    }

    pub fn kernel(&self) -> Subquotient {
        Subquotient::new(
            self.source.ngens(),
            &self.kernel_lattice(),
            &self.source.relations(),
        )
        .expect("source relations lie in the kernel")
    }

    pub fn image(&self) -> Subquotient {
        Subquotient::new(
            self.target.ngens(),
            &self.image_lattice(),
            &self.target.relations(),
        )
        .expect("target relations lie in the image lattice")
    }

    pub fn cokernel(&self) -> FgGroup {
        cokernel(&self.image_lattice())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_iso() {
            return None;
        }
        let rel = self.image_lattice();
        let s = smith(&rel);
        let n = self.target.ngens();
        let mut cols = Vec::with_capacity(n);
        for e in 0..n {
            let mut b = vec![BigInt::zero(); n];
            b[e] = BigInt::one();
            let sol = super::smith::solve_with(&s, &b)?;
            cols.push(sol[..self.source.ngens()].to_vec());
        }
        let m = IntMatrix::from_columns(self.source.ngens(), &cols);
        GroupHom::new(self.target.clone(), self.source.clone(), m).ok()
    }

    /// Sign-normalizes the matrix for display: entries reduced to `(-t/2, t/2]`.
    pub fn symmetric_matrix(&self) -> IntMatrix {
        let mut m = self.matrix.clone();
        for (i, t) in self.target.moduli().iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for j in 0..m.cols() {
                let v = m[(i, j)].mod_floor(t);
                m[(i, j)] = if (&v * 2) > *t { v - t } else { v };
            }
        }
        m
    }
}

/// `ker(g) / im(f)` for composable `f: A -> B`, `g: B -> C` with `g ∘ f = 0`.
pub fn homology(f: &GroupHom, g: &GroupHom) -> Result<Subquotient> {
    if f.target != g.source {
        return Err(Error::DimensionMismatch("maps are not composable".into()));
    }
    if !g.compose(f)?.is_zero() {
        return Err(Error::NotWellDefined("composite of consecutive maps is nonzero".into()));
    }
    Subquotient::new(f.target.ngens(), &g.kernel_lattice(), &f.image_lattice())
}

/// Whether `x` is the identity up to sign on a single generator (used in tests).
pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::big_vec;

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_rows(&[vec![2]])), FgGroup::cyclic(2));
        assert_eq!(cokernel(&IntMatrix::zeros(3, 0)), FgGroup::free(3));
        let g = cokernel(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g.rank(), 0);
        assert_eq!(g.torsion(), big_vec(&[6]).as_slice());
    }

    #[test]
    fn normal_form_validation() {
        assert!(FgGroup::new(0, big_vec(&[2, 3])).is_err());
        assert!(FgGroup::new(0, big_vec(&[1])).is_err());
        assert!(FgGroup::new(1, big_vec(&[2, 4])).is_ok());
        assert_eq!(FgGroup::new(1, big_vec(&[2, 4])).unwrap().to_string(), "Z+Z/2+Z/4");
    }

    #[test]
    fn hom_relation_check() {
        let z2 = FgGroup::cyclic(2);
        let z = FgGroup::free(1);
        assert!(GroupHom::new(z2.clone(), z.clone(), IntMatrix::from_rows(&[vec![1]])).is_err());
        assert!(GroupHom::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[vec![3]])).is_ok());
        let z4 = FgGroup::cyclic(4);
        assert!(GroupHom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).is_ok());
        assert!(GroupHom::new(z2, z4, IntMatrix::from_rows(&[vec![1]])).is_err());
    }

    #[test]
    fn kernel_image_iso() {
        let z = FgGroup::free(1);
        let z2 = FgGroup::cyclic(2);
        let red = GroupHom::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(*red.kernel().group(), FgGroup::free(1));
        assert_eq!(*red.image().group(), z2);
        assert!(red.is_surjective() && !red.is_injective());
        let neg = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![-1]])).unwrap();
        assert!(neg.is_iso());
        assert_eq!(neg.inverse().unwrap(), neg);
        let two = GroupHom::new(z.clone(), z, IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(!two.is_iso());
        assert_eq!(two.cokernel(), z2);
    }

    #[test]
    fn homology_of_short_complex() {
        // Z --2--> Z --0--> Z : homology in the middle is Z/2
        let z = FgGroup::free(1);
        let f = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let g = GroupHom::zero(&z, &z);
        assert_eq!(*homology(&f, &g).unwrap().group(), FgGroup::cyclic(2));
        assert!(homology(&f, &f).is_err());
    }
}
