use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{FgGroup, GroupHom};
use super::matrix::IntMatrix;
use super::smith::{lattice_basis, smith, solve_with, SmithDecomposition};
use crate::error::{Error, Result};

/// `span(S) / span(T)` inside `Z^ambient`, together with the data needed to
/// write any element of `span(S)` in the normal-form coordinates of the quotient.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    /// Basis of span(S), as columns.
    basis: IntMatrix,
    basis_smith: SmithDecomposition,
    /// Left factor of the SNF of T written in `basis` coordinates.
    change: IntMatrix,
    /// Indices into the changed coordinates: torsion ones, then free ones.
    kept: Vec<usize>,
    group: FgGroup,
    /// Ambient representatives of the standard generators, as columns.
    reps: IntMatrix,
    /// Generators of span(T) as given.
    denominators: IntMatrix,
}

impl Subquotient {
    /// Fails with `SubgroupViolation` when some column of `t` is outside span(S).
    pub fn new(ambient: usize, s: &IntMatrix, t: &IntMatrix) -> Result<Self> {
        if s.rows() != ambient || t.rows() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "generators live in Z^{} and Z^{}, ambient is Z^{ambient}",
                s.rows(),
                t.rows()
            )));
        }
        let basis = lattice_basis(s);
        let basis_smith = smith(&basis);
        let k = basis.cols();
        let mut tcols = Vec::with_capacity(t.cols());
        for j in 0..t.cols() {
            let col = t.column(j);
            match solve_with(&basis_smith, &col) {
                Some(y) => tcols.push(y),
                None => return Err(Error::SubgroupViolation { column: j }),
            }
        }
        let x = IntMatrix::from_columns(k, &tcols);
        let sx = smith(&x);
        let mut torsion_idx = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..sx.rank {
            let d = &sx.d[(i, i)];
            if !d.is_one() {
                torsion_idx.push(i);
                torsion.push(d.clone());
            }
        }
        let mut kept = torsion_idx;
        kept.extend(sx.rank..k);
        let group = FgGroup::new(k - sx.rank, torsion).expect("invariant factors form a chain");
        let full_reps = basis.mul(&sx.u_inv).expect("shapes agree");
        let reps = full_reps.select_cols(&kept);
        Ok(Subquotient {
            ambient,
            basis,
            basis_smith,
            change: sx.u,
            kept,
            group,
            reps,
            denominators: t.clone(),
        })
    }

    /// Quotient of `Z^ambient` by nothing, i.e. the free group itself.
    pub fn free(ambient: usize) -> Self {
        Self::new(
            ambient,
            &IntMatrix::identity(ambient),
            &IntMatrix::zeros(ambient, 0),
        )
        .expect("identity spans everything")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    /// Basis of the numerator lattice.
    pub fn numerator(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denominator(&self) -> &IntMatrix {
        &self.denominators
    }

    /// Ambient cocycle representing standard generator `i`.
    pub fn representative(&self, i: usize) -> Vec<BigInt> {
        self.reps.column(i)
    }

    pub fn representatives(&self) -> &IntMatrix {
        &self.reps
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.iter().all(Zero::is_zero) || solve_with(&self.basis_smith, x).is_some()
    }

    /// Normal-form coordinates of `x`, which must lie in span(S).
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient {
            return None;
        }
        let y = solve_with(&self.basis_smith, x)?;
        let z = self.change.mul_vec(&y);
        let mut out: Vec<BigInt> = self.kept.iter().map(|&i| z[i].clone()).collect();
        self.group.reduce(&mut out);
        Some(out)
    }

    /// Whether `x` (in span(S)) is zero in the quotient.
    pub fn is_zero_class(&self, x: &[BigInt]) -> Option<bool> {
        self.coords(x).map(|c| c.iter().all(Zero::is_zero))
    }

    /// Ambient element for the given normal-form coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.reps.mul_vec(coords)
    }
}

/// Map of subquotients induced by an ambient matrix `f` (rows = target ambient).
pub fn induced_map(f: &IntMatrix, src: &Subquotient, tgt: &Subquotient) -> Result<GroupHom> {
    if f.cols() != src.ambient || f.rows() != tgt.ambient {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between Z^{} and Z^{}",
            f.rows(),
            f.cols(),
            src.ambient,
            tgt.ambient
        )));
    }
    for j in 0..src.basis.cols() {
        let y = f.mul_vec(&src.basis.column(j));
        if !tgt.contains(&y) {
            return Err(Error::NotWellDefined(format!(
                "numerator generator {j} leaves the target numerator"
            )));
        }
    }
    for j in 0..src.denominators.cols() {
        let y = f.mul_vec(&src.denominators.column(j));
        if tgt.is_zero_class(&y) != Some(true) {
            return Err(Error::NotWellDefined(format!(
                "denominator generator {j} is not sent into the target denominator"
            )));
        }
    }
    let cols: Vec<Vec<BigInt>> = (0..src.group.ngens())
        .map(|i| {
            let y = f.mul_vec(&src.representative(i));
            tgt.coords(&y).expect("checked containment above")
        })
        .collect();
    let m = IntMatrix::from_columns(tgt.group.ngens(), &cols);
    GroupHom::new(src.group.clone(), tgt.group.clone(), m)
}

/// Reduction of `x` modulo `m` coordinatewise, 0 meaning no reduction.
pub fn reduce_mod(x: &mut [BigInt], moduli: &[BigInt]) {
    for (xi, m) in x.iter_mut().zip(moduli) {
        if !m.is_zero() {
            *xi = xi.mod_floor(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::big_vec;

    #[test]
    fn equal_lattices_give_zero() {
        let id = IntMatrix::identity(2);
        let q = Subquotient::new(2, &id, &id).unwrap();
        assert!(q.group().is_trivial());
    }

    #[test]
    fn z_mod_two() {
        let q = Subquotient::new(
            1,
            &IntMatrix::identity(1),
            &IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        assert_eq!(*q.group(), FgGroup::cyclic(2));
        assert_eq!(q.coords(&big_vec(&[3])).unwrap(), big_vec(&[1]));
        assert_eq!(q.coords(&big_vec(&[4])).unwrap(), big_vec(&[0]));
    }

    #[test]
    fn lattice_quotient_is_free() {
        let s = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let t = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let q = Subquotient::new(2, &s, &t).unwrap();
        assert_eq!(*q.group(), FgGroup::free(1));
        assert!(q.coords(&big_vec(&[1, 0])).is_none());
        let c = q.coords(&big_vec(&[0, 3])).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0] == BigInt::from(1) || c[0] == BigInt::from(-1));
    }

    #[test]
    fn violation_detected() {
        let s = IntMatrix::from_rows(&[vec![2]]);
        let t = IntMatrix::from_rows(&[vec![3]]);
        assert_eq!(
            Subquotient::new(1, &s, &t).unwrap_err(),
            Error::SubgroupViolation { column: 0 }
        );
    }

    #[test]
    fn induced_examples() {
        let z6 = Subquotient::new(
            1,
            &IntMatrix::identity(1),
            &IntMatrix::from_rows(&[vec![6]]),
        )
        .unwrap();
        let id = induced_map(&IntMatrix::identity(1), &z6, &z6).unwrap();
        assert_eq!(id, GroupHom::identity(z6.group()));
        let zero = induced_map(&IntMatrix::zeros(1, 1), &z6, &z6).unwrap();
        assert!(zero.is_zero());
        let three = induced_map(&IntMatrix::from_rows(&[vec![3]]), &z6, &z6).unwrap();
        assert_eq!(three.apply(&big_vec(&[1])), big_vec(&[3]));
        assert_eq!(three.apply(&big_vec(&[2])), big_vec(&[0]));
        // ×1 from Z/6 to Z/4 is not well defined
        let z4 = Subquotient::new(
            1,
            &IntMatrix::identity(1),
            &IntMatrix::from_rows(&[vec![4]]),
        )
        .unwrap();
        assert!(matches!(
            induced_map(&IntMatrix::identity(1), &z6, &z4),
            Err(Error::NotWellDefined(_))
        ));
    }
}
