use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use super::ring::GradedRing;
use crate::error::{Error, Result};
use crate::exactlin::{preimage_mod, IntMatrix, Subquotient};
use crate::simplicial::chain::{coboundary_matrix_signed, Cellular};

/// Element of `C^{p,q} = Hom(C_p, A_q)`, total degree `p - q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedCochain {
    pub p: usize,
    pub q: i64,
    pub values: Vec<BigInt>,
}

impl BigradedCochain {
    pub fn new(ring: &GradedRing, p: usize, q: i64, mut values: Vec<BigInt>) -> Self {
        reduce_into(ring, q, &mut values);
        BigradedCochain { p, q, values }
    }

    pub fn total_degree(&self) -> i64 {
        self.p as i64 - self.q
    }

    pub fn zero<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, p: usize, q: i64) -> Self {
        Self::new(ring, p, q, vec![BigInt::zero(); cx.chain().cell_count(p)])
    }

    pub fn random<C: Cellular + ?Sized, R: Rng>(cx: &C, ring: &GradedRing, p: usize, q: i64, bound: i64, rng: &mut R) -> Self {
        let n = cx.chain().cell_count(p);
        let values = (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        Self::new(ring, p, q, values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, ring: &GradedRing, other: &BigradedCochain) -> Result<BigradedCochain> {
        if self.p != other.p || self.q != other.q || self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch("bigraded cochains of different shape".into()));
        }
        let v = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(BigradedCochain::new(ring, self.p, self.q, v))
    }

    pub fn scale(&self, ring: &GradedRing, s: &BigInt) -> BigradedCochain {
        BigradedCochain::new(ring, self.p, self.q, self.values.iter().map(|x| x * s).collect())
    }
}

fn reduce_into(ring: &GradedRing, q: i64, values: &mut [BigInt]) {
    match ring.modulus(q) {
        None => values.iter_mut().for_each(|v| *v = BigInt::zero()),
        Some(m) if !m.is_zero() => values.iter_mut().for_each(|v| *v = v.mod_floor(&m)),
        Some(_) => {}
    }
}

/// Sign `-(-1)^n` of the graded coboundary on total degree `n`.
pub fn graded_delta_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}

/// Matrix of `δ: C^{p,q} -> C^{p+1,q}`.
pub fn graded_delta_matrix<C: Cellular + ?Sized>(cx: &C, p: usize, q: i64) -> IntMatrix {
    coboundary_matrix_signed(cx.chain(), p, graded_delta_sign(p as i64 - q))
}

/// `(δα)(c) = -(-1)^n α(∂c)` with `n = p - q`.
pub fn graded_delta<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, alpha: &BigradedCochain) -> BigradedCochain {
    let d = graded_delta_matrix(cx, alpha.p, alpha.q);
    BigradedCochain::new(ring, alpha.p + 1, alpha.q, d.mul_vec(&alpha.values))
}

/// Sign `(-1)^{(s-t)p}` of the graded cup product.
pub fn graded_cup_sign(p: usize, s: usize, t: i64) -> i64 {
    if ((s as i64 - t) * p as i64).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(α∪β)(σ) = (-1)^{(s-t)p} α(front) · β(back)` for `α ∈ C^{p,q}`, `β ∈ C^{s,t}`.
pub fn graded_cup<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, alpha: &BigradedCochain, beta: &BigradedCochain) -> BigradedCochain {
    let sign = graded_cup_sign(alpha.p, beta.p, beta.q);
    cup_signed(cx, ring, alpha, beta, sign)
}

/// Front/back product of bigraded cochains with the ring pairing and an explicit sign.
pub fn cup_signed<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, alpha: &BigradedCochain, beta: &BigradedCochain, sign: i64) -> BigradedCochain {
    let n = alpha.p + beta.p;
    let cells = cx.chain().cell_count(n);
    let s = BigInt::from(sign);
    let values = (0..cells)
        .map(|c| {
            let (f, b) = cx.front_back(n, c, alpha.p);
            &s * ring.multiply(alpha.q, &alpha.values[f], beta.q, &beta.values[b])
        })
        .collect();
    BigradedCochain::new(ring, n, alpha.q + beta.q, values)
}

/// Ungraded cup of `C^p(X; A_q) × C^s(X; A_t)`: sign `(-1)^{ps}` only.
pub fn ungraded_cup<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, alpha: &BigradedCochain, beta: &BigradedCochain) -> BigradedCochain {
    let sign = if (alpha.p * beta.p).is_multiple_of(2) { 1 } else { -1 };
    cup_signed(cx, ring, alpha, beta, sign)
}

/// `H^{p,q}` of the bigraded complex as a subquotient of `Z^{C_p}`.
pub fn bigraded_cohomology<C: Cellular + ?Sized>(cx: &C, ring: &GradedRing, p: usize, q: i64) -> Subquotient {
    let n = cx.chain().cell_count(p);
    let Some(m) = ring.modulus(q) else {
        return Subquotient::new(n, &IntMatrix::zeros(n, 0), &IntMatrix::zeros(n, 0)).expect("zero");
    };
    let d = graded_delta_matrix(cx, p, q);
    let cycles = preimage_mod(&d, &vec![m.clone(); d.rows()]);
    let mut bounds = if m.is_zero() {
        IntMatrix::zeros(n, 0)
    } else {
        IntMatrix::identity(n).scale(&m)
    };
    if p > 0 {
        bounds = graded_delta_matrix(cx, p - 1, q).hstack(&bounds).expect("rows agree");
    }
    Subquotient::new(n, &cycles, &bounds).expect("coboundaries are cocycles")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures;

    #[test]
    fn delta_signs_by_parity() {
        let e = fixtures::simplex(1);
        let ring = GradedRing::laurent(1, 0);
        let a = BigradedCochain::new(&ring, 0, 0, vec![BigInt::from(5), BigInt::from(2)]);
        // n = 0 even: -(α(v1) - α(v0))
        assert_eq!(graded_delta(&e, &ring, &a).values, vec![BigInt::from(3)]);
        let b = BigradedCochain::new(&ring, 0, 1, vec![BigInt::from(5), BigInt::from(2)]);
        // n = -1 odd: +(α(v1) - α(v0))
        assert_eq!(graded_delta(&e, &ring, &b).values, vec![BigInt::from(-3)]);
    }

    #[test]
    fn cup_sign_examples() {
        assert_eq!(graded_cup_sign(1, 1, 2), -1);
        assert_eq!(graded_cup_sign(0, 3, 0), 1);
        assert_eq!(graded_cup_sign(3, 2, 2), 1);
    }
}
