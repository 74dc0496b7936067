use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Polynomial over `F_2` in integer-valued variables, stored multilinearly
/// (`x² = x`, valid because `x² ≡ x mod 2` for integers). A monomial is a
/// bitmask of variables; the empty mask is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mod2Poly {
    terms: BTreeSet<u32>,
}

impl Mod2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(1 << i)
    }

    pub fn monomial(mask: u32) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(mask);
        Mod2Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.iter().copied()
    }

    fn toggle(&mut self, m: u32) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &Mod2Poly) -> Mod2Poly {
        let mut out = self.clone();
        for &m in &other.terms {
            out.toggle(m);
        }
        out
    }

    pub fn mul(&self, other: &Mod2Poly) -> Mod2Poly {
        let mut out = Mod2Poly::zero();
        for &a in &self.terms {
            for &b in &other.terms {
                out.toggle(a | b);
            }
        }
        out
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Mod2Poly>) -> Mod2Poly {
        items.into_iter().fold(Mod2Poly::zero(), |acc, x| acc.add(x))
    }

    /// Parity of the value at integer arguments.
    pub fn eval(&self, args: &[i64]) -> bool {
        let bits: u32 = args
            .iter()
            .enumerate()
            .filter(|(_, &x)| x.rem_euclid(2) == 1)
            .map(|(i, _)| 1u32 << i)
            .sum();
        self.terms.iter().filter(|&&m| m & bits == m).count() % 2 == 1
    }

    /// `(-1)^{value}`.
    pub fn sign(&self, args: &[i64]) -> i64 {
        if self.eval(args) {
            -1
        } else {
            1
        }
    }

    /// Replaces variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[Mod2Poly]) -> Mod2Poly {
        let mut out = Mod2Poly::zero();
        for &m in &self.terms {
            let mut term = Mod2Poly::one();
            for (i, img) in images.iter().enumerate() {
                if m >> i & 1 == 1 {
                    term = term.mul(img);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&m| {
                if m == 0 {
                    return "1".to_string();
                }
                (0..names.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| names[i])
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Mod2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&PQST))
    }
}

/// Variable names for pair signs in the graded `(p,q),(s,t)` convention.
pub const PQST: [&str; 4] = ["p", "q", "s", "t"];
/// Variable names for pair signs in engine `(f1,c1),(f2,c2)` indexing.
pub const ENGINE_VARS: [&str; 4] = ["f1", "c1", "f2", "c2"];

/// Quadratic sign family `ε(p,q) = (-1)^{a p² + b pq + c q² + d p + e q}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignFamily {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
}

impl SignFamily {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `(-1)^{pq}`.
    pub fn pq() -> Self {
        SignFamily {
            b: true,
            ..Self::default()
        }
    }

    pub fn from_bits(bits: u8) -> Self {
        SignFamily {
            a: bits & 1 != 0,
            b: bits & 2 != 0,
            c: bits & 4 != 0,
            d: bits & 8 != 0,
            e: bits & 16 != 0,
        }
    }

    /// All 32 coefficient choices.
    pub fn all() -> Vec<SignFamily> {
        (0u8..32).map(Self::from_bits).collect()
    }

    /// Exponent as a polynomial in the given first and second arguments.
    pub fn poly(&self, x: &Mod2Poly, y: &Mod2Poly) -> Mod2Poly {
        let mut out = Mod2Poly::zero();
        if self.a {
            out = out.add(&x.mul(x));
        }
        if self.b {
            out = out.add(&x.mul(y));
        }
        if self.c {
            out = out.add(&y.mul(y));
        }
        if self.d {
            out = out.add(x);
        }
        if self.e {
            out = out.add(y);
        }
        out
    }

    pub fn eval(&self, p: i64, q: i64) -> i64 {
        let e = (self.a as i64) * p * p + (self.b as i64) * p * q + (self.c as i64) * q * q + (self.d as i64) * p + (self.e as i64) * q;
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn label(&self) -> String {
        let names = ["x", "y"];
        let x = Mod2Poly::var(0);
        let y = Mod2Poly::var(1);
        format!("(-1)^({})", self.poly(&x, &y).render(&names))
    }
}

/// Exponent of the graded cup sign `(s - t) p`.
pub fn graded_cup_exponent() -> Mod2Poly {
    let (p, s, t) = (Mod2Poly::var(0), Mod2Poly::var(2), Mod2Poly::var(3));
    s.add(&t).mul(&p)
}

/// Exponent of the ungraded cup sign `s p` (cochain degrees only).
pub fn ungraded_cup_exponent() -> Mod2Poly {
    Mod2Poly::var(2).mul(&Mod2Poly::var(0))
}

/// Exponent of the sign by which the square comparing the graded and the
/// ungraded cup product through `ε` fails to commute:
/// `ε(p+s, q+t) ε(p,q) ε(s,t) (-1)^{graded} (-1)^{ungraded}`.
pub fn eta_discrepancy(family: &SignFamily) -> Mod2Poly {
    let (p, q, s, t) = (Mod2Poly::var(0), Mod2Poly::var(1), Mod2Poly::var(2), Mod2Poly::var(3));
    Mod2Poly::sum([
        &family.poly(&p.add(&s), &q.add(&t)),
        &family.poly(&p, &q),
        &family.poly(&s, &t),
        &graded_cup_exponent(),
        &ungraded_cup_exponent(),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Discrepancy {
    /// Commutes on the nose.
    Trivial,
    /// Uniformly `(-1)^{sq}`.
    Sq,
    /// Uniformly `(-1)^{pt}`.
    Pt,
    Other,
}

#[derive(Clone, Debug)]
pub struct EtaReport {
    pub family: SignFamily,
    pub range: i64,
    pub symbolic: Mod2Poly,
    /// Sign per `(p,q,s,t)` in lexicographic order over `[0, range]^4`.
    pub table: Vec<((i64, i64, i64, i64), i64)>,
    pub uniform: Discrepancy,
    /// Whether the enumerated table agrees with the symbolic exponent.
    pub consistent: bool,
}

fn quadruples(range: i64) -> impl Iterator<Item = (i64, i64, i64, i64)> {
    (0..=range).flat_map(move |p| {
        (0..=range).flat_map(move |q| (0..=range).flat_map(move |s| (0..=range).map(move |t| (p, q, s, t))))
    })
}

/// Discrepancy table of `family`, enumerated directly from the two cup sign
/// formulas and compared with the symbolic exponent.
pub fn eta_commutation(family: &SignFamily, range: i64) -> EtaReport {
    let symbolic = eta_discrepancy(family);
    let mut table = Vec::new();
    let mut consistent = true;
    let (mut triv, mut sq, mut pt) = (true, true, true);
    for (p, q, s, t) in quadruples(range) {
        let graded = if ((s - t) * p).rem_euclid(2) == 0 { 1 } else { -1 };
        let ungraded = if (s * p).rem_euclid(2) == 0 { 1 } else { -1 };
        let v = family.eval(p + s, q + t) * family.eval(p, q) * family.eval(s, t) * graded * ungraded;
        consistent &= v == symbolic.sign(&[p, q, s, t]);
        triv &= v == 1;
        sq &= v == if (s * q) % 2 == 0 { 1 } else { -1 };
        pt &= v == if (p * t) % 2 == 0 { 1 } else { -1 };
        table.push(((p, q, s, t), v));
    }
    let uniform = if triv {
        Discrepancy::Trivial
    } else if sq {
        Discrepancy::Sq
    } else if pt {
        Discrepancy::Pt
    } else {
        Discrepancy::Other
    };
    EtaReport {
        family: *family,
        range,
        symbolic,
        table,
        uniform,
        consistent,
    }
}

/// Every quadratic family whose comparison square commutes strictly on `[0, range]^4`.
pub fn strict_families(range: i64) -> Vec<SignFamily> {
    SignFamily::all()
        .into_iter()
        .filter(|f| eta_commutation(f, range).uniform == Discrepancy::Trivial)
        .collect()
}
