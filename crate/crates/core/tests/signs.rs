use num_bigint::BigInt;
use num_traits::Zero;

use mss_core::graded::cochain::bigraded_cohomology;
use mss_core::graded::reindex::{reindex_identity_exhaustive, reindex_lhs, reindex_rhs};
use mss_core::graded::signs::strict_families;
use mss_core::graded::{eta_commutation, Discrepancy, GradedRing, SignFamily};
use mss_core::instances::suite::{cochain_identities, sign_suite};
use mss_core::simplicial::{cohomology, fixtures};

#[test]
fn two_hundred_random_cochains() {
    for seed in [1, 7, 2024] {
        let (checked, failure) = cochain_identities(200, seed);
        assert_eq!(failure, None);
        assert_eq!(checked, 200);
    }
}

#[test]
fn whole_suite_passes_at_range_four() {
    for a in sign_suite(4, 11) {
        assert!(a.passed, "{}: {}", a.name, a.detail);
    }
}

#[test]
fn eta_discrepancies_for_every_range() {
    for range in 0..=6 {
        let pq = eta_commutation(&SignFamily::pq(), range);
        let id = eta_commutation(&SignFamily::identity(), range);
        assert!(pq.consistent && id.consistent);
        if range >= 1 {
            assert_eq!(pq.uniform, Discrepancy::Sq, "range {range}");
            assert_eq!(id.uniform, Discrepancy::Pt, "range {range}");
            assert!(strict_families(range).is_empty(), "range {range}");
        }
    }
}

#[test]
fn reindexing_identity() {
    assert_eq!(reindex_identity_exhaustive(5), None);
    assert_eq!(reindex_lhs(), reindex_rhs());
}

#[test]
fn graded_cohomology_in_degree_zero_is_ordinary_cohomology() {
    for (name, k) in fixtures::all() {
        if k.count(0) > 10 {
            continue;
        }
        for m in [0u64, 2, 3] {
            let ring = if m == 0 { GradedRing::integers() } else { GradedRing::mod_n(m) };
            let dim = k.dim().unwrap_or(0);
            for p in 0..=dim {
                let g = bigraded_cohomology(&k, &ring, p, 0);
                let h = cohomology(k.chain_complex(), p, &BigInt::from(m));
                assert_eq!(g.group(), h.group(), "{name} mod {m} degree {p}");
            }
        }
    }
}

#[test]
fn laurent_levels_repeat_ordinary_cohomology() {
    let k = fixtures::rp2();
    let ring = GradedRing::laurent(2, 0);
    for q in -4..=4 {
        for p in 0..=2 {
            let g = bigraded_cohomology(&k, &ring, p, q);
            if q.rem_euclid(2) == 0 {
                let h = cohomology(k.chain_complex(), p, &BigInt::zero());
                assert_eq!(g.group(), h.group());
            } else {
                assert!(g.group().is_trivial());
            }
        }
    }
}

mod naturality {
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use mss_core::graded::{graded_cup, graded_delta, ungraded_cup, BigradedCochain, GradedRing, SignFamily};
    use mss_core::simplicial::{fixtures, SimplicialMap};

    fn pull(f: &SimplicialMap, ring: &GradedRing, c: &BigradedCochain) -> BigradedCochain {
        BigradedCochain::new(ring, c.p, c.q, f.pullback_values(c.p, &c.values))
    }

    fn sign(e: i64) -> BigInt {
        BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    /// δ, both cups and the η squares commute with pullback along the fixture maps.
    #[test]
    fn graded_structure_is_natural_under_fixture_maps() {
        let collapse = SimplicialMap::new(fixtures::sphere2(), fixtures::simplex(2), vec![0, 1, 2, 2]).unwrap();
        let ring = GradedRing::laurent(1, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in [fixtures::torus_projection(), fixtures::klein_projection(), collapse] {
            let (x, b) = (f.source(), f.target());
            let dim = b.dim().unwrap();
            for _ in 0..40 {
                let p = rng.gen_range(0..=dim);
                let s = rng.gen_range(0..=dim - p);
                let (q, t) = (rng.gen_range(-2..=2i64), rng.gen_range(-2..=2i64));
                let a = BigradedCochain::random(b, &ring, p, q, 4, &mut rng);
                let c = BigradedCochain::random(b, &ring, s, t, 4, &mut rng);
                let (fa, fc) = (pull(&f, &ring, &a), pull(&f, &ring, &c));
                if p < dim {
                    assert_eq!(pull(&f, &ring, &graded_delta(b, &ring, &a)), graded_delta(x, &ring, &fa));
                }
                let g = graded_cup(x, &ring, &fa, &fc);
                let u = ungraded_cup(x, &ring, &fa, &fc);
                assert_eq!(pull(&f, &ring, &graded_cup(b, &ring, &a, &c)), g);
                assert_eq!(pull(&f, &ring, &ungraded_cup(b, &ring, &a, &c)), u);
                let (pi, si) = (p as i64, s as i64);
                for (family, discrepancy) in [(SignFamily::pq(), s as i64 * q), (SignFamily::identity(), pi * t)] {
                    let lhs = g.scale(&ring, &BigInt::from(family.eval(pi + si, q + t)));
                    let eta = family.eval(pi, q) * family.eval(si, t);
                    let rhs = u.scale(&ring, &(sign(discrepancy) * eta));
                    assert_eq!(lhs, rhs, "{} at ({p},{q}) x ({s},{t})", family.label());
                }
            }
        }
    }
}
