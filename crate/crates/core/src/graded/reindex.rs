//! Dictionary between the homotopy-style indexing `(p, q)` of an
//! Atiyah–Hirzebruch page, `E^{p,q} = H^q(X; π_{p+q})`, and the engine's
//! `(f, c)` = (filtration, coefficient degree), total degree `f - c`.

use serde::{Deserialize, Serialize};

use super::signs::{Mod2Poly, SignFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    Engine,
    Paper,
}

pub fn paper_to_engine(p: i64, q: i64) -> (i64, i64) {
    (q, p + q)
}

pub fn engine_to_paper(f: i64, c: i64) -> (i64, i64) {
    (c - f, f)
}

/// Direction of a sign transport on pair signs in four variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reindexing {
    Identity,
    /// Variables `(p,q,s,t)` in, `(f1,c1,f2,c2)` out.
    PaperToEngine,
    /// Variables `(f1,c1,f2,c2)` in, `(p,q,s,t)` out.
    EngineToPaper,
}

impl Reindexing {
    fn images(self) -> [Mod2Poly; 4] {
        let v = Mod2Poly::var;
        match self {
            Reindexing::Identity => [v(0), v(1), v(2), v(3)],
            // p = c1 - f1, q = f1, s = c2 - f2, t = f2
            Reindexing::PaperToEngine => [v(1).add(&v(0)), v(0), v(3).add(&v(2)), v(2)],
            // f1 = q, c1 = p + q, f2 = t, c2 = s + t
            Reindexing::EngineToPaper => [v(1), v(0).add(&v(1)), v(3), v(2).add(&v(3))],
        }
    }

    /// Rewrites a sign exponent in the other indexing.
    pub fn transport(self, exponent: &Mod2Poly) -> Mod2Poly {
        exponent.substitute(&self.images())
    }

    /// Rewrites the single-bidegree exponent of a family as a polynomial in
    /// `(f, c)` (variables 0 and 1).
    pub fn transport_family(self, family: &SignFamily) -> Mod2Poly {
        let (x, y) = (Mod2Poly::var(0), Mod2Poly::var(1));
        let e = family.poly(&x, &y);
        let imgs = self.images();
        e.substitute(&[imgs[0].clone(), imgs[1].clone()])
    }

    pub fn map_bidegree(self, a: i64, b: i64) -> (i64, i64) {
        match self {
            Reindexing::Identity => (a, b),
            Reindexing::PaperToEngine => paper_to_engine(a, b),
            Reindexing::EngineToPaper => engine_to_paper(a, b),
        }
    }
}

/// Left side `t(p - q) + pq + st + (p+s)(q+t)` of the reindexing identity.
pub fn reindex_lhs() -> Mod2Poly {
    let (p, q, s, t) = (Mod2Poly::var(0), Mod2Poly::var(1), Mod2Poly::var(2), Mod2Poly::var(3));
    Mod2Poly::sum([
        &t.mul(&p.add(&q)),
        &p.mul(&q),
        &s.mul(&t),
        &p.add(&s).mul(&q.add(&t)),
    ])
}

/// Right side `q(t - s)`.
pub fn reindex_rhs() -> Mod2Poly {
    let (q, s, t) = (Mod2Poly::var(1), Mod2Poly::var(2), Mod2Poly::var(3));
    q.mul(&t.add(&s))
}

/// Checks the identity on every integer quadruple in `[0, range]^4` by direct
/// evaluation and returns the first failure.
pub fn reindex_identity_exhaustive(range: i64) -> Option<(i64, i64, i64, i64)> {
    for p in 0..=range {
        for q in 0..=range {
            for s in 0..=range {
                for t in 0..=range {
                    let lhs = t * (p - q) + p * q + s * t + (p + s) * (q + t);
                    let rhs = q * (t - s);
                    if (lhs - rhs).rem_euclid(2) != 0 {
                        return Some((p, q, s, t));
                    }
                }
            }
        }
    }
    None
}

/// The sign `(-1)^{t(p+q)}` relating the spectral sequence product to the
/// ungraded cup product, in homotopy-style indexing.
pub fn ungraded_remark_exponent() -> Mod2Poly {
    let (p, q, t) = (Mod2Poly::var(0), Mod2Poly::var(1), Mod2Poly::var(3));
    t.mul(&p.add(&q))
}
