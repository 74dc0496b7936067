use std::collections::BTreeMap;

use num_bigint::BigInt;

use mss_core::couple::bockstein::{direct_page, summary_bidegree};
use mss_core::couple::{beta_localize, bockstein_couple, bockstein_pages, bockstein_pairing, free_part_matches, k_collapse_couple};
use mss_core::exactlin::{homology, induced_map, FgGroup, GroupHom, IntMatrix, Subquotient};
use mss_core::graded::{GradedRing, Mod2Poly, SignFamily};
use mss_core::simplicial::{cohomology, cup, fixtures, Cochain, OrderedComplex};
use mss_core::ssengine::pairing::{static_page, tabulate};
use mss_core::ssengine::{compare_global_iso, leibniz_check, Identification, PagePairing};

fn ranks(p: &mss_core::ssengine::PageData, dims: i64) -> Vec<usize> {
    (0..dims).map(|m| p.group(summary_bidegree(m)).ngens()).collect()
}

#[test]
fn point_has_a_single_stable_entry() {
    for n in [2, 3, 6] {
        let pages = bockstein_pages(&fixtures::point(), &BigInt::from(n), 8).unwrap();
        for p in &pages.pages {
            assert_eq!(p.group(summary_bidegree(0)), FgGroup::cyclic(n));
            assert!(p.differentials.is_empty());
        }
    }
}

#[test]
fn rp3_mod_two() {
    let k = fixtures::rp3();
    let c = bockstein_couple(&k, &BigInt::from(2)).unwrap();
    c.check_exactness().unwrap();
    let pages = bockstein_pages(&k, &BigInt::from(2), 8).unwrap();
    assert!(pages.cross_checked && pages.stable);
    assert_eq!(ranks(&pages.pages[0], 4), vec![1, 1, 1, 1]);
    let d1: Vec<_> = pages.pages[0].differentials.keys().copied().collect();
    assert_eq!(d1, vec![summary_bidegree(1)]);
    assert_eq!(ranks(&pages.pages[1], 4), vec![1, 0, 0, 1]);
    assert_eq!(ranks(pages.e_infinity(), 4), vec![1, 0, 0, 1]);
    assert_eq!(pages.limit, 2);
    // the first derived couple kills E in degrees 1 and 2
    let derived = c.derive().unwrap();
    assert!(derived.e_group(1).is_trivial() && derived.e_group(2).is_trivial());
}

#[test]
fn rp3_mod_three_collapses() {
    let pages = bockstein_pages(&fixtures::rp3(), &BigInt::from(3), 8).unwrap();
    let e1 = &pages.pages[0];
    let expected = [FgGroup::cyclic(3), FgGroup::trivial(), FgGroup::trivial(), FgGroup::cyclic(3)];
    for (m, g) in expected.iter().enumerate() {
        assert_eq!(&e1.group(summary_bidegree(m as i64)), g);
    }
    assert!(e1.differentials.is_empty());
    assert_eq!(pages.limit, 1);
}

#[test]
fn torus_collapses_at_e1() {
    let pages = bockstein_pages(&fixtures::torus(), &BigInt::from(2), 8).unwrap();
    assert_eq!(ranks(&pages.pages[0], 3), vec![1, 2, 1]);
    assert_eq!(pages.limit, 1);
}

#[test]
fn free_part_theorem_on_every_fixture() {
    for (name, k) in fixtures::all() {
        for p in [2, 3] {
            let pages = bockstein_pages(&k, &BigInt::from(p), 16).unwrap();
            assert!(pages.stable, "{name} mod {p}");
            assert!(pages.cross_checked, "{name} mod {p}");
            assert!(free_part_matches(&k, &pages), "{name} mod {p}");
        }
    }
}

#[test]
fn composite_modulus_pages_are_consistent() {
    let pages = bockstein_pages(&fixtures::rp3(), &BigInt::from(4), 8).unwrap();
    assert!(pages.cross_checked);
    // Z/2 torsion in H^2(RP^3; Z) is seen by Z/4 at E_1 in degrees 1 and 2
    assert_eq!(pages.pages[0].group(summary_bidegree(1)), FgGroup::cyclic(2));
}

#[test]
fn direct_pages_are_homology_of_the_previous_page() {
    for k in [fixtures::rp2(), fixtures::rp3(), fixtures::klein_bottle()] {
        let dims = k.chain_complex().len() as i64;
        for r in 1..=3 {
            let (_, cur) = direct_page(&k, &BigInt::from(2), r).unwrap();
            let (_, next) = direct_page(&k, &BigInt::from(2), r + 1).unwrap();
            for m in 0..dims {
                let b = summary_bidegree(m);
                let zero = |s: &FgGroup, t: &FgGroup| GroupHom::zero(s, t);
                let g = cur.group(b);
                let prev = summary_bidegree(m - 1);
                let din = cur.differentials.get(&prev).cloned().unwrap_or_else(|| zero(&cur.group(prev), &g));
                let nb = summary_bidegree(m + 1);
                let dout = cur.differentials.get(&b).cloned().unwrap_or_else(|| zero(&g, &cur.group(nb)));
                assert!(dout.compose(&din).unwrap().is_zero(), "d^2 at degree {m}");
                assert_eq!(homology(&din, &dout).unwrap().group(), &next.group(b), "r = {r}, degree {m}");
            }
        }
    }
}

fn mod_n_cup_pairing(k: &OrderedComplex, n: &BigInt) -> (BTreeMap<mss_core::ssengine::Bidegree, Subquotient>, PagePairing) {
    let dims = k.chain_complex().len();
    let table: BTreeMap<_, _> = (0..dims).map(|m| (summary_bidegree(m as i64), cohomology(k.chain_complex(), m, n))).collect();
    let tables = tabulate(&table, &table, &table, |u, x, v, y| {
        let a = Cochain::new((-u.c) as usize, n.clone(), x.to_vec());
        let b = Cochain::new((-v.c) as usize, n.clone(), y.to_vec());
        cup(k, &a, &b).values
    })
    .unwrap();
    let data = static_page(1, summary_bidegree(1), &table, Some((0, dims as i64 - 1)), None);
    let pp = PagePairing {
        left: data.clone(),
        right: data.clone(),
        target: data,
        tables,
    };
    (table, pp)
}

#[test]
fn e1_pairing_is_the_mod_n_cup_product() {
    for (k, n) in [(fixtures::rp3(), 2), (fixtures::rp2(), 2), (fixtures::torus(), 3)] {
        let n = BigInt::from(n);
        let e1 = bockstein_pairing(&k, &n, 1).unwrap();
        let (entries, _) = direct_page(&k, &n, 1).unwrap();
        let (table, cupp) = mod_n_cup_pairing(&k, &n);
        let maps: BTreeMap<_, _> = entries
            .iter()
            .map(|(b, e)| (*b, induced_map(&IntMatrix::identity(e.ambient()), e, &table[b]).unwrap()))
            .collect();
        assert!(maps.values().all(GroupHom::is_iso));
        let id = Identification {
            left: maps.clone(),
            right: maps.clone(),
            target: maps,
        };
        let v = compare_global_iso(&e1, &cupp, Some(&id), &SignFamily::identity(), &Mod2Poly::zero());
        assert!(v.isomorphic, "{:?}", v.counterexample);
        assert!(v.checked > 0);
    }
}

#[test]
fn rp3_generator_products() {
    // x in degree 1, y in degree 2: x^2 = y, x y generates degree 3
    let e1 = bockstein_pairing(&fixtures::rp3(), &BigInt::from(2), 1).unwrap();
    let one = [BigInt::from(1)];
    let x2 = e1.multiply(summary_bidegree(1), &one, summary_bidegree(1), &one).unwrap();
    assert_eq!(x2, vec![BigInt::from(1)]);
    let xy = e1.multiply(summary_bidegree(1), &one, summary_bidegree(2), &one).unwrap();
    assert_eq!(xy, vec![BigInt::from(1)]);
}

#[test]
fn bockstein_is_a_derivation() {
    let rep = leibniz_check(&bockstein_pairing(&fixtures::rp3(), &BigInt::from(2), 1).unwrap());
    assert!(rep.ok());
    assert!(rep.checked > 0);
    for r in 1..=2 {
        let rep = leibniz_check(&bockstein_pairing(&fixtures::rp2(), &BigInt::from(2), r).unwrap());
        assert!(rep.ok(), "rp2 E_{r}");
    }
}

#[test]
fn point_pairing_is_the_module_structure() {
    let pp = bockstein_pairing(&fixtures::point(), &BigInt::from(5), 1).unwrap();
    let z = summary_bidegree(0);
    assert_eq!(pp.multiply(z, &[BigInt::from(2)], z, &[BigInt::from(3)]).unwrap(), vec![BigInt::from(1)]);
}

#[test]
fn k_collapse_of_the_two_sphere() {
    let c = k_collapse_couple(&fixtures::sphere2(), &GradedRing::laurent(2, 0), (-4, 4)).unwrap();
    // i is an isomorphism away from the lowest degrees of the stored range
    for m in -2..=4 {
        assert!(c.i_map(m).is_iso(), "degree {m}");
    }
    let loc = beta_localize(&c).unwrap();
    assert!(!loc.is_empty());
    for (m, l) in &loc {
        if m.rem_euclid(2) == 0 {
            assert_eq!(l.to_string(), "Z^2", "degree {m}");
        } else {
            assert_eq!(l.to_string(), "0", "degree {m}");
        }
    }
    assert_eq!(c.d_group(0), FgGroup::free(2));
    assert!(c.d_group(1).is_trivial());
}
