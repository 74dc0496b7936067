mod common;

use num_bigint::BigInt;
use num_traits::Zero;

use mss_core::exactlin::FgGroup;
use mss_core::graded::{Mod2Poly, SignFamily};
use mss_core::instances::{build_skeletal, filtered_cochains};
use mss_core::simplicial::{cohomology_groups, fixtures};
use mss_core::ssengine::{
    abutment_check, compare_global_iso, d_shift, e_infinity, leibniz_check, page, page_pairing, pages, verify_homology_step, Bidegree, Cell,
    FilteredCochainComplex,
};

fn cell(degree: i64, filtration: i64, label: &str) -> Cell {
    Cell {
        degree,
        filtration,
        modulus: BigInt::zero(),
        label: label.into(),
    }
}

fn one(t: usize, s: usize) -> (usize, usize, BigInt) {
    (t, s, BigInt::from(1))
}

/// a (0, f0), c (0, f1), b (1, f2), e (1, f1) with da = b, dc = e.
fn d2_complex() -> FilteredCochainComplex {
    let cells = vec![cell(0, 0, "a"), cell(0, 1, "c"), cell(1, 2, "b"), cell(1, 1, "e")];
    FilteredCochainComplex::new(cells, vec![one(2, 0), one(3, 1)]).unwrap()
}

#[test]
fn second_differential_has_bidegree_r_r_minus_one() {
    let cx = d2_complex();
    let e1 = page(&cx, 1);
    assert_eq!(e1.group(Bidegree::from_total(0, 0)), FgGroup::free(1));
    assert_eq!(e1.group(Bidegree::from_total(2, 1)), FgGroup::free(1));
    assert_eq!(e1.group(Bidegree::from_total(1, 0)), FgGroup::trivial());
    assert!(!e1.has_nonzero_differential());
    let e2 = page(&cx, 2);
    let src = Bidegree::from_total(0, 0);
    let d2 = e2.differential(src).expect("d_2 present");
    assert_eq!(src + d_shift(2), Bidegree::from_total(2, 1));
    assert_eq!(d_shift(2), Bidegree::new(2, 1));
    assert!(d2.is_iso());
    let e3 = page(&cx, 3);
    assert!(e3.entries().values().all(|s| s.group().is_trivial()));
    assert!(abutment_check(&cx).ok);
}

#[test]
fn cone_splits_into_circle_and_relative_cohomology() {
    // base circle in filtration 0, simplices through the apex in filtration 1
    let k = fixtures::cone_circle();
    let (cx, _) = filtered_cochains(&k, &BigInt::zero(), |p, i| k.simplices(p)[i].contains(&3) as i64).unwrap();
    let e1 = page(&cx, 1);
    // E_1 in filtration 0 is H*(S^1)
    assert_eq!(e1.group(Bidegree::from_total(0, 0)), FgGroup::free(1));
    assert_eq!(e1.group(Bidegree::from_total(0, 1)), FgGroup::free(1));
    // E_1 in filtration 1 is H*(cone, S^1) = Z in degree 2
    for n in 0..=2 {
        let expected = if n == 2 { FgGroup::free(1) } else { FgGroup::trivial() };
        assert_eq!(e1.group(Bidegree::from_total(1, n)), expected, "degree {n}");
    }
    let d1 = e1.differential(Bidegree::from_total(0, 1)).unwrap();
    assert!(d1.is_iso());
    let (einf, limit) = e_infinity(&cx);
    assert_eq!(limit, 2);
    let nonzero: Vec<Bidegree> = einf.entries().iter().filter(|(_, s)| !s.group().is_trivial()).map(|(b, _)| *b).collect();
    assert_eq!(nonzero, vec![Bidegree::from_total(0, 0)]);
    assert!(abutment_check(&cx).ok);
}

#[test]
fn rp2_abutment_pieces() {
    let cx = build_skeletal(&fixtures::rp2(), &BigInt::zero()).unwrap();
    let rep = abutment_check(&cx);
    assert!(rep.ok);
    let totals: Vec<FgGroup> = rep.degrees.iter().map(|d| d.total.clone()).collect();
    assert_eq!(totals, vec![FgGroup::free(1), FgGroup::trivial(), FgGroup::cyclic(2)]);
    assert_eq!(totals, cohomology_groups(fixtures::rp2().chain_complex(), &BigInt::zero()));
}

#[test]
fn torus_ranks() {
    let cx = build_skeletal(&fixtures::torus(), &BigInt::zero()).unwrap();
    let rep = abutment_check(&cx);
    assert!(rep.ok);
    let ranks: Vec<usize> = rep.degrees.iter().map(|d| d.total.rank()).collect();
    assert_eq!(ranks, vec![1, 2, 1]);
    assert!(rep.degrees.iter().all(|d| d.total.torsion().is_empty()));
}

#[test]
fn next_page_is_homology_and_differentials_square_to_zero() {
    for (name, k) in [("circle", fixtures::circle()), ("rp2", fixtures::rp2()), ("cone", fixtures::cone_circle())] {
        for m in [0, 2, 3] {
            let cx = build_skeletal(&k, &BigInt::from(m)).unwrap();
            let all = pages(&cx);
            for w in all.windows(2) {
                assert_eq!(verify_homology_step(&w[0], &w[1]).unwrap(), None, "{name} mod {m} r = {}", w[0].r);
            }
            for p in &all {
                for (b, d) in p.differentials() {
                    if let Some(next) = p.differential(*b + d_shift(p.r)) {
                        assert!(next.compose(d).unwrap().is_zero(), "{name}: d^2 at {b}");
                    }
                }
            }
        }
    }
    let cx = d2_complex();
    let all = pages(&cx);
    for w in all.windows(2) {
        assert_eq!(verify_homology_step(&w[0], &w[1]).unwrap(), None);
    }
}

#[test]
fn cup_pairing_satisfies_leibniz_and_compares_with_itself() {
    let cx = build_skeletal(&fixtures::torus(), &BigInt::zero()).unwrap();
    let pairing = cx.product().unwrap().clone();
    for r in 1..=2 {
        let pp = page_pairing(&cx, &cx, &cx, &pairing, r).unwrap();
        let rep = leibniz_check(&pp);
        assert!(rep.ok(), "E_{r}: {:?}", rep.failures.first());
        assert!(rep.checked > 0);
        let v = compare_global_iso(&pp, &pp, None, &SignFamily::identity(), &Mod2Poly::zero());
        assert!(v.isomorphic);
    }
}

#[test]
fn pages_agree_with_the_image_oracle() {
    let mut complexes = vec![d2_complex()];
    for (k, m) in [(fixtures::circle(), 0), (fixtures::cone_circle(), 0), (fixtures::square(), 2), (fixtures::sphere2(), 3)] {
        complexes.push(build_skeletal(&k, &BigInt::from(m)).unwrap());
    }
    for cx in &complexes {
        for p in pages(cx) {
            for (b, s) in p.entries() {
                let (rank, torsion) = common::pages::entry(cx, b.total(), b.f, p.r);
                assert_eq!(s.group(), &FgGroup::new(rank, torsion).unwrap(), "E_{} at {b}", p.r);
            }
        }
    }
}
