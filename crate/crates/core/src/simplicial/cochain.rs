use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use super::chain::{coboundary_matrix, coboundary_matrix_signed, delta_sign, Cellular};
use crate::error::{Error, Result};

/// Cochain of degree `degree` with values in `Z` (`modulus = 0`) or `Z/modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Cochain {
    pub fn new(degree: usize, modulus: BigInt, mut values: Vec<BigInt>) -> Self {
        reduce(&mut values, &modulus);
        Cochain {
            degree,
            modulus,
            values,
        }
    }

    pub fn zero<C: Cellular + ?Sized>(cx: &C, degree: usize, modulus: BigInt) -> Self {
        let n = cx.chain().cell_count(degree);
        Cochain::new(degree, modulus, vec![BigInt::zero(); n])
    }

    /// Uniform values in `[-bound, bound]`, reduced when the modulus is nonzero.
    pub fn random<C: Cellular + ?Sized, R: Rng>(cx: &C, degree: usize, modulus: BigInt, bound: i64, rng: &mut R) -> Self {
        let n = cx.chain().cell_count(degree);
        let values = (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        Cochain::new(degree, modulus, values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Cochain::new(self.degree, self.modulus.clone(), values))
    }

    pub fn scale(&self, s: &BigInt) -> Cochain {
        Cochain::new(
            self.degree,
            self.modulus.clone(),
            self.values.iter().map(|x| x * s).collect(),
        )
    }

    fn compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.modulus != other.modulus || self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch("cochains of different shape".into()));
        }
        Ok(())
    }
}

pub(crate) fn reduce(values: &mut [BigInt], modulus: &BigInt) {
    if !modulus.is_zero() {
        for v in values.iter_mut() {
            *v = v.mod_floor(modulus);
        }
    }
}

/// `(δα)(c) = -(-1)^p α(∂c)`.
pub fn delta<C: Cellular + ?Sized>(cx: &C, alpha: &Cochain) -> Cochain {
    let d = coboundary_matrix(cx.chain(), alpha.degree);
    Cochain::new(alpha.degree + 1, alpha.modulus.clone(), d.mul_vec(&alpha.values))
}

/// Classical coboundary `(δα)(c) = α(∂c)`.
pub fn delta_classical<C: Cellular + ?Sized>(cx: &C, alpha: &Cochain) -> Cochain {
    let d = coboundary_matrix_signed(cx.chain(), alpha.degree, 1);
    Cochain::new(alpha.degree + 1, alpha.modulus.clone(), d.mul_vec(&alpha.values))
}

/// Front/back product with an explicit sign and value pairing.
pub fn cup_with<C, F>(cx: &C, alpha: &Cochain, beta: &Cochain, sign: i64, modulus: BigInt, pair: F) -> Cochain
where
    C: Cellular + ?Sized,
    F: Fn(&BigInt, &BigInt) -> BigInt,
{
    let (p, q) = (alpha.degree, beta.degree);
    let n = p + q;
    let cells = cx.chain().cell_count(n);
    let s = BigInt::from(sign);
    let values = (0..cells)
        .map(|c| {
            let (f, b) = cx.front_back(n, c, p);
            &s * pair(&alpha.values[f], &beta.values[b])
        })
        .collect();
    Cochain::new(n, modulus, values)
}

/// `(α∪β)(σ) = (-1)^{pq} α(front_p σ) β(back_q σ)`, values multiplied as integers.
pub fn cup<C: Cellular + ?Sized>(cx: &C, alpha: &Cochain, beta: &Cochain) -> Cochain {
    let sign = if (alpha.degree * beta.degree).is_multiple_of(2) { 1 } else { -1 };
    let m = common_modulus(&alpha.modulus, &beta.modulus);
    cup_with(cx, alpha, beta, sign, m, |a, b| a * b)
}

/// Classical Alexander–Whitney product without the sign.
pub fn cup_classical<C: Cellular + ?Sized>(cx: &C, alpha: &Cochain, beta: &Cochain) -> Cochain {
    let m = common_modulus(&alpha.modulus, &beta.modulus);
    cup_with(cx, alpha, beta, 1, m, |a, b| a * b)
}

fn common_modulus(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Degreewise sign family relating the signed conventions to the classical ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalIso {
    /// `signs[p]` is `φ(p)`.
    pub signs: Vec<i64>,
}

impl ClassicalIso {
    pub fn sign(&self, p: usize) -> i64 {
        self.signs[p]
    }

    pub fn apply(&self, alpha: &Cochain) -> Cochain {
        alpha.scale(&BigInt::from(self.signs[alpha.degree]))
    }

    /// Closed form `(-1)^{p(p+1)/2}`.
    pub fn closed_form(p: usize) -> i64 {
        if (p * (p + 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn pm(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

/// Whether a degreewise family intertwines both coboundaries and both cup
/// products, checked on the sign identities through degree `max_degree`:
/// `φ(p+1)·(-(-1)^p) = φ(p)` and `φ(p+q)·(-1)^{pq} = φ(p)φ(q)`.
pub fn is_classical_iso(signs: &[i64], max_degree: usize) -> bool {
    for p in 0..max_degree {
        if signs[p + 1] * delta_sign(p) != signs[p] {
            return false;
        }
    }
    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            if signs[p + q] * pm(p * q % 2 == 1) != signs[p] * signs[q] {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search over all `2^{max_degree+1}` sign families; returns every
/// family that is a dga isomorphism from the signed to the classical conventions.
pub fn classical_iso_search(max_degree: usize) -> Vec<ClassicalIso> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (max_degree + 1)) {
        let signs: Vec<i64> = (0..=max_degree).map(|p| pm(mask >> p & 1 == 1)).collect();
        if is_classical_iso(&signs, max_degree) {
            out.push(ClassicalIso { signs });
        }
    }
    out
}

/// The isomorphism for the degrees present in `cx`, found by search and then
/// confirmed on the given cochains of `cx`.
pub fn classical_iso<C: Cellular + ?Sized>(cx: &C) -> ClassicalIso {
    let top = cx.chain().len().max(1);
    let found = classical_iso_search(top);
    assert_eq!(found.len(), 1, "the sign identities determine the family");
    found.into_iter().next().expect("one family")
}

/// Checks `φ∘δ = δ_classical∘φ` and `φ(α∪β) = φα ∪_classical φβ` on the given cochains.
pub fn verify_classical_iso<C: Cellular + ?Sized>(cx: &C, iso: &ClassicalIso, alpha: &Cochain, beta: &Cochain) -> bool {
    let top = cx.chain().len();
    if alpha.degree + 1 < top && iso.signs.len() > alpha.degree + 1 {
        let lhs = iso.apply(&delta(cx, alpha));
        let rhs = delta_classical(cx, &iso.apply(alpha));
        if lhs != rhs {
            return false;
        }
    }
    if alpha.degree + beta.degree < top {
        let lhs = iso.apply(&cup(cx, alpha, beta));
        let rhs = cup_classical(cx, &iso.apply(alpha), &iso.apply(beta));
        if lhs != rhs {
            return false;
        }
    }
    true
}
