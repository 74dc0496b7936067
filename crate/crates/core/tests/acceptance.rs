//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::Zero;

use mss_core::couple::{bockstein_pages, bockstein_pairing, direct_page, free_part_matches, summary_bidegree};
use mss_core::exactlin::{induced_map, FgGroup, GroupHom, IntMatrix, Subquotient};
use mss_core::graded::reindex::ungraded_remark_exponent;
use mss_core::graded::{GradedRing, Mod2Poly, Reindexing, SignFamily};
use mss_core::instances::suite::{cochain_identities, eta_assertions, reindex_assertions};
use mss_core::instances::{
    ahss_comparison, build_ahss, build_descent, build_group_page, build_serre, build_skeletal, compare_product_filtrations, product_filtrations,
    verify_e1, CoverData,
};
use mss_core::simplicial::{cohomology, cup, fixtures, Cochain, FiniteGroup, OrderedComplex};
use mss_core::ssengine::pairing::{static_page, tabulate};
use mss_core::ssengine::{abutment_check, compare_global_iso, page, pages, Bidegree, FilteredCochainComplex, Identification, PagePairing};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    for seed in [1, 2, 3] {
        let (n, failure) = cochain_identities(200, seed);
        if let Some(f) = failure {
            return Err(format!("seed {seed}, sample {n}: {f}"));
        }
    }
    Ok("200 random cochains x 3 seeds, ungraded and graded".into())
}

fn criterion_2() -> Outcome {
    let a = eta_assertions(6);
    for x in &a {
        ensure(x.passed, format!("{}: {}", x.name, x.detail))?;
    }
    Ok(a.iter().map(|x| x.detail.clone()).collect::<Vec<_>>().join("; "))
}

fn criterion_3() -> Outcome {
    let a = reindex_assertions(5);
    for x in &a {
        ensure(x.passed, format!("{}: {}", x.name, x.detail))?;
    }
    Ok("identity on [0,5]^4, page file round trip exact".into())
}

fn twist() -> Mod2Poly {
    Reindexing::PaperToEngine.transport(&ungraded_remark_exponent())
}

fn criterion_4() -> Outcome {
    let k = fixtures::torus();
    let z = GradedRing::integers();
    let a = build_ahss(&k, &z, (0, 2)).map_err(|e| e.to_string())?;
    ensure(verify_e1(&k, &z, &a), "E_1 is not the cochain complex")?;
    let c = ahss_comparison(&k, &z, &a).map_err(|e| e.to_string())?;
    let id = Some(&c.identification);
    let v = compare_global_iso(&c.e2, &c.graded, id, &SignFamily::identity(), &Mod2Poly::zero());
    ensure(v.isomorphic && v.checked > 0, format!("Z: E_2 vs graded cup: {:?}", v.counterexample))?;
    let v = compare_global_iso(&c.e2, &c.ungraded, id, &SignFamily::pq(), &twist());
    ensure(v.isomorphic, "Z: ungraded with the twist")?;
    // a periodic ring with |x| = 1 makes the twist visible
    let l = GradedRing::laurent(1, 0);
    let a = build_ahss(&k, &l, (0, 2)).map_err(|e| e.to_string())?;
    let c = ahss_comparison(&k, &l, &a).map_err(|e| e.to_string())?;
    let id = Some(&c.identification);
    let graded = compare_global_iso(&c.e2, &c.graded, id, &SignFamily::identity(), &Mod2Poly::zero());
    ensure(graded.isomorphic, format!("Z[x^±1]: E_2 vs graded cup: {:?}", graded.counterexample))?;
    let plain = compare_global_iso(&c.e2, &c.ungraded, id, &SignFamily::identity(), &Mod2Poly::zero());
    ensure(!plain.isomorphic, "Z[x^±1]: ungraded cup agrees without a twist")?;
    let twisted = compare_global_iso(&c.e2, &c.ungraded, id, &SignFamily::pq(), &twist());
    ensure(twisted.isomorphic, format!("Z[x^±1]: twisted ungraded: {:?}", twisted.counterexample))?;
    Ok(format!(
        "graded iso ({} products over Z[x^±1]); ungraded differs by (-1)^(t(p+q))",
        graded.checked
    ))
}

fn ranks(p: &mss_core::ssengine::PageData, dims: i64) -> Vec<usize> {
    (0..dims).map(|m| p.group(summary_bidegree(m)).ngens()).collect()
}

fn mod_n_cup(k: &OrderedComplex, n: &BigInt) -> Result<(BTreeMap<Bidegree, Subquotient>, PagePairing), String> {
    let dims = k.chain_complex().len();
    let table: BTreeMap<_, _> = (0..dims).map(|m| (summary_bidegree(m as i64), cohomology(k.chain_complex(), m, n))).collect();
    let tables = tabulate(&table, &table, &table, |u, x, v, y| {
        let a = Cochain::new((-u.c) as usize, n.clone(), x.to_vec());
        let b = Cochain::new((-v.c) as usize, n.clone(), y.to_vec());
        cup(k, &a, &b).values
    })
    .map_err(|e| e.to_string())?;
    let data = static_page(1, summary_bidegree(1), &table, Some((0, dims as i64 - 1)), None);
    let pp = PagePairing {
        left: data.clone(),
        right: data.clone(),
        target: data,
        tables,
    };
    Ok((table, pp))
}

fn criterion_5() -> Outcome {
    let err = |e: mss_core::Error| e.to_string();
    let rp3 = fixtures::rp3();
    let two = bockstein_pages(&rp3, &BigInt::from(2), 8).map_err(err)?;
    ensure(ranks(&two.pages[0], 4) == [1, 1, 1, 1], "RP3 mod 2 E_1")?;
    ensure(ranks(&two.pages[1], 4) == [1, 0, 0, 1], "RP3 mod 2 E_2")?;
    ensure(ranks(two.e_infinity(), 4) == [1, 0, 0, 1] && two.limit == 2, "RP3 mod 2 E_inf")?;
    let three = bockstein_pages(&rp3, &BigInt::from(3), 8).map_err(err)?;
    ensure(ranks(&three.pages[0], 4) == [1, 0, 0, 1] && three.limit == 1, "RP3 mod 3")?;
    for (name, k) in fixtures::all() {
        for p in [2, 3] {
            let pages = bockstein_pages(&k, &BigInt::from(p), 16).map_err(err)?;
            ensure(pages.cross_checked && free_part_matches(&k, &pages), format!("{name} mod {p}: free part"))?;
        }
    }
    for (k, n) in [(fixtures::rp3(), 2), (fixtures::rp3(), 3), (fixtures::torus(), 2)] {
        let n = BigInt::from(n);
        let e1 = bockstein_pairing(&k, &n, 1).map_err(err)?;
        let (entries, _) = direct_page(&k, &n, 1).map_err(err)?;
        let (table, cupp) = mod_n_cup(&k, &n)?;
        let mut maps = BTreeMap::new();
        for (b, e) in &entries {
            maps.insert(*b, induced_map(&IntMatrix::identity(e.ambient()), e, &table[b]).map_err(err)?);
        }
        ensure(maps.values().all(GroupHom::is_iso), "E_1 is not H*(;Z/n)")?;
        let id = Identification {
            left: maps.clone(),
            right: maps.clone(),
            target: maps,
        };
        let v = compare_global_iso(&e1, &cupp, Some(&id), &SignFamily::identity(), &Mod2Poly::zero());
        ensure(v.isomorphic, format!("E_1 pairing mod {n}: {:?}", v.counterexample))?;
    }
    Ok("RP3 pages, free part on every fixture, E_1 pairing = mod-p cup".into())
}

fn criterion_6() -> Outcome {
    for (name, x, y) in [("Δ1xΔ1", fixtures::simplex(1), fixtures::simplex(1)), ("S1xS1", fixtures::circle(), fixtures::circle())] {
        let c = compare_product_filtrations(&x, &y, &BigInt::zero()).map_err(|e| e.to_string())?;
        ensure(!c.e1_differences.is_empty(), format!("{name}: E_1 tables agree"))?;
        ensure(c.e2_isomorphic, format!("{name}: E_2 differs at {:?}", c.e2_failures))?;
    }
    Ok("E_1 differs, E_2 isomorphic on both products".into())
}

fn descent_complexes() -> Vec<(&'static str, FilteredCochainComplex)> {
    let arcs = CoverData::new(fixtures::circle(), &[vec![vec![0, 1], vec![1, 2]], vec![vec![0, 2]]]).expect("cover");
    let disks = CoverData::new(fixtures::sphere2(), &[vec![vec![0, 1, 2], vec![0, 1, 3]], vec![vec![0, 2, 3], vec![1, 2, 3]]]).expect("cover");
    vec![
        ("descent S1", build_descent(&arcs, &BigInt::zero()).expect("builds")),
        ("descent S2", build_descent(&disks, &BigInt::zero()).expect("builds")),
    ]
}

fn criterion_7() -> Outcome {
    let mut all: Vec<(String, FilteredCochainComplex)> = Vec::new();
    for (name, k) in fixtures::all() {
        for m in [0, 2] {
            all.push((format!("{name} mod {m}"), build_skeletal(&k, &BigInt::from(m)).map_err(|e| e.to_string())?));
        }
    }
    for (name, map) in [("serre torus", fixtures::torus_projection()), ("serre klein", fixtures::klein_projection())] {
        for m in [0, 2] {
            all.push((format!("{name} mod {m}"), build_serre(&map, &BigInt::from(m)).map_err(|e| e.to_string())?));
        }
    }
    for (name, cx) in descent_complexes() {
        all.push((name.into(), cx));
    }
    for (x, y) in [(fixtures::simplex(1), fixtures::simplex(1)), (fixtures::circle(), fixtures::circle())] {
        let pf = product_filtrations(&x, &y, &BigInt::zero()).map_err(|e| e.to_string())?;
        all.push(("product filtration".into(), pf.product));
    }
    let torus = build_ahss(&fixtures::torus(), &GradedRing::integers(), (0, 2)).map_err(|e| e.to_string())?;
    all.push(("ahss torus".into(), torus.complex));
    let s2 = build_ahss(&fixtures::sphere2(), &GradedRing::laurent(2, 0), (-2, 2)).map_err(|e| e.to_string())?;
    all.push(("ahss S2 Z[x^±1]".into(), s2.complex));
    for (name, cx) in &all {
        ensure(abutment_check(cx).ok, format!("{name}: E_inf is not the associated graded"))?;
    }
    Ok(format!("{} filtered complexes", all.len()))
}

fn criterion_8() -> Outcome {
    let err = |e: mss_core::Error| e.to_string();
    let g = build_group_page(&FiniteGroup::cyclic(2), &GradedRing::integers(), 5, &[0], None).map_err(err)?;
    let h: Vec<FgGroup> = (0..5).map(|p| g.table[&Bidegree::new(p, 0)].group().clone()).collect();
    let z2 = FgGroup::cyclic(2);
    ensure(
        h == [FgGroup::free(1), FgGroup::trivial(), z2.clone(), FgGroup::trivial(), z2],
        format!("H*(Z/2; Z) = {h:?}"),
    )?;
    ensure(g.remark_verdict().isomorphic, "Z/2 with Z")?;
    // Z/3 with Z/3[x^±1], |x| = 1, has odd classes in both degrees
    let g = build_group_page(&FiniteGroup::cyclic(3), &GradedRing::laurent(1, 3), 4, &[-2, -1, 0, 1, 2], None).map_err(err)?;
    let v = g.remark_verdict();
    ensure(v.isomorphic && v.checked > 0, format!("Z/3 twisted: {:?}", v.counterexample))?;
    let plain = compare_global_iso(&g.graded, &g.ungraded, None, &SignFamily::identity(), &Mod2Poly::zero());
    ensure(!plain.isomorphic, "Z/3: graded and ungraded agree without a twist")?;
    Ok(format!("H*(Z/2;Z) = (Z,0,Z/2,0,Z/2); discrepancy (-1)^(t(p+q)) on {} products", v.checked))
}

fn criterion_9() -> Outcome {
    let d = descent_complexes();
    let totals = |cx: &FilteredCochainComplex| {
        let rep = abutment_check(cx);
        (rep.ok, rep.degrees.iter().map(|d| d.total.clone()).collect::<Vec<_>>())
    };
    let (ok, t) = totals(&d[0].1);
    ensure(ok && t == [FgGroup::free(1), FgGroup::free(1)], format!("S1: {t:?}"))?;
    let (ok, t) = totals(&d[1].1);
    ensure(ok && t == [FgGroup::free(1), FgGroup::trivial(), FgGroup::free(1)], format!("S2: {t:?}"))?;
    let e1 = page(&d[1].1, 1);
    let d1 = e1.differential(Bidegree::from_total(0, 0));
    ensure(d1.is_some_and(|d| !d.is_zero()), "S2: Mayer-Vietoris d_1 vanishes")?;
    Ok("S1 and S2 abut to H*, d_1 nonzero on S2".into())
}

fn criterion_10() -> Outcome {
    let mut complexes = Vec::new();
    for (name, k) in fixtures::all() {
        for m in [0, 2, 3] {
            complexes.push((format!("{name} mod {m}"), build_skeletal(&k, &BigInt::from(m)).map_err(|e| e.to_string())?));
        }
    }
    for (name, cx) in descent_complexes() {
        complexes.push((name.into(), cx));
    }
    let pf = product_filtrations(&fixtures::simplex(1), &fixtures::simplex(1), &BigInt::zero()).map_err(|e| e.to_string())?;
    complexes.push(("product Δ1xΔ1".into(), pf.product));
    let mut entries = 0;
    let mut used = 0;
    for (name, cx) in complexes.iter().filter(|(_, cx)| cx.len() <= 30) {
        used += 1;
        for p in pages(cx) {
            for (b, s) in p.entries() {
                let (rank, torsion) = common::pages::entry(cx, b.total(), b.f, p.r);
                let expected = FgGroup::new(rank, torsion).map_err(|e| e.to_string())?;
                ensure(s.group() == &expected, format!("{name}: E_{} at {b}: {} vs {}", p.r, s.group(), expected))?;
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} entries on {used} complexes"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sign conventions", criterion_1),
        ("eta commutation", criterion_2),
        ("reindexing", criterion_3),
        ("torus AHSS pairing", criterion_4),
        ("Bockstein", criterion_5),
        ("product filtrations", criterion_6),
        ("convergence", criterion_7),
        ("group cohomology page", criterion_8),
        ("descent", criterion_9),
        ("oracle equivalence", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
