use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::cochains::filtered_cochains;
use crate::error::Result;
use crate::exactlin::{induced_map, FgGroup, IntMatrix};
use crate::simplicial::complex::{product, OrderedComplex};
use crate::ssengine::{page, Bidegree, FilteredCochainComplex, Page};

/// Product filtration `filt(ρ) = dim π₁ρ + dim π₂ρ` and skeletal filtration
/// `filt(ρ) = dim ρ` on the staircase triangulation of `kx × ky`.
pub struct ProductFiltrations {
    pub complex: OrderedComplex,
    pub product: FilteredCochainComplex,
    pub skeletal: FilteredCochainComplex,
}

pub fn product_filtrations(kx: &OrderedComplex, ky: &OrderedComplex, modulus: &BigInt) -> Result<ProductFiltrations> {
    let (k, p1, p2) = product(kx, ky);
    let (prod, _) = filtered_cochains(&k, modulus, |p, i| {
        let s = &k.simplices(p)[i];
        (p1.image(s).len() + p2.image(s).len()) as i64 - 2
    })?;
    let (skel, _) = filtered_cochains(&k, modulus, |p, _| p as i64)?;
    Ok(ProductFiltrations {
        complex: k,
        product: prod,
        skeletal: skel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationComparison {
    /// Bidegrees where the `E_1` groups differ, with (product, skeletal) groups.
    pub e1_differences: Vec<(Bidegree, FgGroup, FgGroup)>,
    /// Whether the identity on cochains induces isomorphisms on every `E_2` entry.
    pub e2_isomorphic: bool,
    pub e2_failures: Vec<Bidegree>,
}

fn entries_union(a: &Page, b: &Page) -> BTreeSet<Bidegree> {
    a.entries().keys().chain(b.entries().keys()).copied().collect()
}

/// Compares the two filtrations page by page. The skeletal filtration is
/// contained in the product filtration, so the identity on cochains is a
/// filtered map and its induced maps serve as the `E_2` certificates.
pub fn compare_product_filtrations(kx: &OrderedComplex, ky: &OrderedComplex, modulus: &BigInt) -> Result<FiltrationComparison> {
    let pf = product_filtrations(kx, ky, modulus)?;
    let (p1, s1) = (page(&pf.product, 1), page(&pf.skeletal, 1));
    let e1_differences = entries_union(&p1, &s1)
        .into_iter()
        .filter_map(|b| {
            let (x, y) = (p1.group(b), s1.group(b));
            (x != y).then_some((b, x, y))
        })
        .collect();
    let (p2, s2) = (page(&pf.product, 2), page(&pf.skeletal, 2));
    let mut e2_failures = Vec::new();
    for b in entries_union(&p2, &s2) {
        let ok = match (s2.entry(b), p2.entry(b)) {
            (Some(s), Some(p)) => {
                let n = s.ambient();
                induced_map(&IntMatrix::identity(n), s, p).map(|m| m.is_iso()).unwrap_or(false)
            }
            (Some(s), None) => s.group().is_trivial(),
            (None, Some(p)) => p.group().is_trivial(),
            (None, None) => true,
        };
        if !ok {
            e2_failures.push(b);
        }
    }
    Ok(FiltrationComparison {
        e1_differences,
        e2_isomorphic: e2_failures.is_empty(),
        e2_failures,
    })
}
