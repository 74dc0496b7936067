use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::serre::build_skeletal;
use crate::graded::cochain::{graded_cup, graded_delta, BigradedCochain};
use crate::graded::reindex::{reindex_identity_exhaustive, reindex_lhs, reindex_rhs, Indexing};
use crate::graded::ring::GradedRing;
use crate::graded::signs::{eta_commutation, strict_families, Discrepancy, SignFamily};
use crate::simplicial::cochain::{classical_iso_search, cup, delta, verify_classical_iso, ClassicalIso, Cochain};
use crate::simplicial::complex::OrderedComplex;
use crate::simplicial::fixtures;
use crate::ssengine::{leibniz_check, page, page_pairing, PageFile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Assertion {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Fixtures used for randomized cochain identities (all but the largest).
pub fn cochain_fixtures() -> Vec<(&'static str, OrderedComplex)> {
    vec![
        ("point", fixtures::point()),
        ("simplex3", fixtures::simplex(3)),
        ("circle", fixtures::circle()),
        ("sphere2", fixtures::sphere2()),
        ("rp2", fixtures::rp2()),
        ("rp3", fixtures::rp3()),
        ("torus", fixtures::torus()),
        ("klein", fixtures::klein_bottle()),
    ]
}

fn add(a: &Cochain, b: &Cochain) -> Cochain {
    a.add(b).expect("same shape")
}

fn degrees<R: Rng>(dim: usize, rng: &mut R) -> (usize, usize) {
    if dim == 0 {
        return (0, 0);
    }
    let p = rng.gen_range(0..dim);
    let s = rng.gen_range(0..dim - p);
    (p, s)
}

/// `δ² = 0` and `δ(α∪β) = δα∪β + (-1)^p α∪δβ` on random integral cochains,
/// plus the graded versions over `Z[x, x^{-1}]`, `|x| = 1`, with the sign
/// `(-1)^{p-q}`. Samples cycle through the fixtures. Returns the first
/// failure, if any, and the number of samples checked.
pub fn cochain_identities(samples: usize, seed: u64) -> (usize, Option<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fx = cochain_fixtures();
    let ring = GradedRing::laurent(1, 0);
    for n in 0..samples {
        let (name, k) = &fx[n % fx.len()];
        let dim = k.dim().unwrap_or(0);
        let (p, s) = degrees(dim, &mut rng);
        let zero = BigInt::zero();
        let a = Cochain::random(k, p, zero.clone(), 5, &mut rng);
        let b = Cochain::random(k, s, zero.clone(), 5, &mut rng);
        if !delta(k, &delta(k, &a)).is_zero() {
            return (n, Some(format!("{name}: δ² ≠ 0 in degree {p}")));
        }
        if p + s < dim {
            let lhs = delta(k, &cup(k, &a, &b));
            let sign = BigInt::from(if p % 2 == 0 { 1 } else { -1 });
            let rhs = add(&cup(k, &delta(k, &a), &b), &cup(k, &a, &delta(k, &b)).scale(&sign));
            if lhs != rhs {
                return (n, Some(format!("{name}: derivation law fails for degrees ({p}, {s})")));
            }
        }
        let (q, t) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let ga = BigradedCochain::random(k, &ring, p, q, 5, &mut rng);
        let gb = BigradedCochain::random(k, &ring, s, t, 5, &mut rng);
        if !graded_delta(k, &ring, &graded_delta(k, &ring, &ga)).is_zero() {
            return (n, Some(format!("{name}: graded δ² ≠ 0 at ({p}, {q})")));
        }
        if p + s < dim {
            let lhs = graded_delta(k, &ring, &graded_cup(k, &ring, &ga, &gb));
            let sign = BigInt::from(if (p as i64 - q).rem_euclid(2) == 0 { 1 } else { -1 });
            let first = graded_cup(k, &ring, &graded_delta(k, &ring, &ga), &gb);
            let second = graded_cup(k, &ring, &ga, &graded_delta(k, &ring, &gb)).scale(&ring, &sign);
            let rhs = first.add(&ring, &second).expect("same shape");
            if lhs != rhs {
                return (n, Some(format!("{name}: graded derivation law fails at ({p},{q}) x ({s},{t})")));
            }
        }
    }
    (samples, None)
}

pub fn eta_assertions(range: i64) -> Vec<Assertion> {
    let pq = eta_commutation(&SignFamily::pq(), range);
    let id = eta_commutation(&SignFamily::identity(), range);
    let strict = strict_families(range);
    vec![
        Assertion::new(
            "eta_commutation (-1)^pq",
            pq.uniform == Discrepancy::Sq && pq.consistent,
            format!("uniform {:?}, symbolic {}", pq.uniform, pq.symbolic.render(&["p", "q", "s", "t"])),
        ),
        Assertion::new(
            "eta_commutation identity",
            id.uniform == Discrepancy::Pt && id.consistent,
            format!("uniform {:?}, symbolic {}", id.uniform, id.symbolic.render(&["p", "q", "s", "t"])),
        ),
        Assertion::new(
            "no strict quadratic family",
            strict.is_empty(),
            format!("{} of 32 families commute strictly", strict.len()),
        ),
    ]
}

pub fn reindex_assertions(range: i64) -> Vec<Assertion> {
    let failure = reindex_identity_exhaustive(range);
    let torus = build_skeletal(&fixtures::torus(), &BigInt::zero()).expect("fixture builds");
    let file = PageFile::from_page(&page(&torus, 2).data());
    let back = file.convert(Indexing::Paper).convert(Indexing::Engine);
    vec![
        Assertion::new(
            "reindex_transform identity",
            failure.is_none() && reindex_lhs() == reindex_rhs(),
            match failure {
                Some(w) => format!("fails at {w:?}"),
                None => format!("holds on [0,{range}]^4 and symbolically"),
            },
        ),
        Assertion::new(
            "reindex_transform round trip",
            back.to_json() == file.to_json(),
            "torus E_2 page engine -> paper -> engine",
        ),
    ]
}

pub fn classical_assertions(range: i64, seed: u64) -> Vec<Assertion> {
    let max = range.max(1) as usize;
    let found = classical_iso_search(max);
    let unique = found.len() == 1 && (0..=max).all(|p| found[0].signs[p] == ClassicalIso::closed_form(p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for (_, k) in cochain_fixtures() {
        let dim = k.dim().unwrap_or(0);
        let iso = ClassicalIso {
            signs: (0..=dim + 1).map(ClassicalIso::closed_form).collect(),
        };
        for _ in 0..5 {
            let (p, s) = degrees(dim, &mut rng);
            let a = Cochain::random(&k, p, BigInt::zero(), 5, &mut rng);
            let b = Cochain::random(&k, s, BigInt::zero(), 5, &mut rng);
            ok &= verify_classical_iso(&k, &iso, &a, &b);
        }
    }
    vec![Assertion::new(
        "classical_iso",
        unique && ok,
        format!("{} family found through degree {max}, (-1)^(p(p+1)/2)", found.len()),
    )]
}

pub fn leibniz_assertions() -> Vec<Assertion> {
    let mut out = Vec::new();
    for (name, k) in [
        ("circle", fixtures::circle()),
        ("sphere2", fixtures::sphere2()),
        ("rp2", fixtures::rp2()),
        ("torus", fixtures::torus()),
    ] {
        for modulus in [0u32, 2] {
            let m = BigInt::from(modulus);
            let cx = build_skeletal(&k, &m).expect("fixture builds");
            let pairing = cx.product().expect("cup product attached").clone();
            for r in 1..=2 {
                let label = format!("leibniz {name} mod {modulus} E_{r}");
                match page_pairing(&cx, &cx, &cx, &pairing, r) {
                    Ok(pp) => {
                        let rep = leibniz_check(&pp);
                        out.push(Assertion::new(label, rep.ok(), format!("{} products checked", rep.checked)));
                    }
                    Err(e) => out.push(Assertion::new(label, false, e.to_string())),
                }
            }
        }
    }
    out
}

/// Every assertion of the sign-theorem suite.
pub fn sign_suite(range: i64, seed: u64) -> Vec<Assertion> {
    let (checked, failure) = cochain_identities(200, seed);
    let mut out = vec![Assertion::new(
        "cochain identities",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} random samples")),
    )];
    out.extend(eta_assertions(range));
    out.extend(reindex_assertions(range));
    out.extend(classical_assertions(range, seed));
    out.extend(leibniz_assertions());
    out
}
