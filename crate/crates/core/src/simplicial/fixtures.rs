//! Canonical small complexes used throughout the tests and the CLI.

use super::complex::{product, OrderedComplex, SimplicialMap};

pub fn point() -> OrderedComplex {
    OrderedComplex::from_facets(1, &[vec![0]])
}

/// The full `n`-simplex.
pub fn simplex(n: usize) -> OrderedComplex {
    OrderedComplex::from_facets(n + 1, &[(0..=n).collect()])
}

/// Boundary of the 2-simplex.
pub fn circle() -> OrderedComplex {
    OrderedComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]])
}

/// Boundary of the 3-simplex.
pub fn sphere2() -> OrderedComplex {
    OrderedComplex::from_facets(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// Cone on the triangle circle with apex 3.
pub fn cone_circle() -> OrderedComplex {
    OrderedComplex::from_facets(4, &[vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]])
}

/// Six-vertex real projective plane.
pub fn rp2() -> OrderedComplex {
    OrderedComplex::from_facets(
        6,
        &[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ],
    )
}

/// Eleven-vertex real projective 3-space (42 tetrahedra).
pub fn rp3() -> OrderedComplex {
    const FACETS: [[usize; 4]; 42] = [
        [0, 1, 2, 3], [0, 1, 2, 7], [0, 1, 3, 9], [0, 1, 4, 7], [0, 1, 4, 9], [0, 2, 3, 5],
        [0, 2, 5, 10], [0, 2, 7, 10], [0, 3, 5, 9], [0, 4, 6, 8], [0, 4, 6, 9], [0, 4, 7, 8],
        [0, 5, 6, 8], [0, 5, 6, 9], [0, 5, 8, 10], [0, 7, 8, 10], [1, 2, 3, 8], [1, 2, 6, 7],
        [1, 2, 6, 8], [1, 3, 8, 10], [1, 3, 9, 10], [1, 4, 5, 7], [1, 4, 5, 10], [1, 4, 9, 10],
        [1, 5, 6, 7], [1, 5, 6, 8], [1, 5, 8, 10], [2, 3, 4, 5], [2, 3, 4, 8], [2, 4, 5, 10],
        [2, 4, 6, 8], [2, 4, 6, 9], [2, 4, 9, 10], [2, 6, 7, 10], [2, 6, 9, 10], [3, 4, 5, 7],
        [3, 4, 7, 8], [3, 5, 6, 7], [3, 5, 6, 9], [3, 6, 7, 10], [3, 6, 9, 10], [3, 7, 8, 10],
    ];
    let facets: Vec<Vec<usize>> = FACETS.iter().map(|f| f.to_vec()).collect();
    OrderedComplex::from_facets(11, &facets)
}

/// Staircase product of two triangle circles: 9 vertices, 27 edges, 18 triangles.
pub fn torus() -> OrderedComplex {
    product(&circle(), &circle()).0
}

/// Projection of the torus onto its first circle factor.
pub fn torus_projection() -> SimplicialMap {
    product(&circle(), &circle()).1
}

/// Nine-vertex Klein bottle; vertex `3i + j` sits over vertex `i` of the circle.
pub fn klein_bottle() -> OrderedComplex {
    const FACETS: [[usize; 3]; 18] = [
        [0, 1, 4], [0, 1, 8], [0, 2, 3], [0, 2, 6], [0, 3, 4], [0, 6, 8],
        [1, 2, 5], [1, 2, 7], [1, 4, 5], [1, 7, 8], [2, 3, 5], [2, 6, 7],
        [3, 4, 7], [3, 5, 6], [3, 6, 7], [4, 5, 8], [4, 7, 8], [5, 6, 8],
    ];
    let facets: Vec<Vec<usize>> = FACETS.iter().map(|f| f.to_vec()).collect();
    OrderedComplex::from_facets(9, &facets)
}

/// The fibration-like map `v -> v / 3` from the Klein bottle to the circle.
pub fn klein_projection() -> SimplicialMap {
    SimplicialMap::new(klein_bottle(), circle(), (0..9).map(|v| v / 3).collect())
        .expect("klein projection is simplicial and monotone")
}

/// `Δ¹ × Δ¹` as two triangles.
pub fn square() -> OrderedComplex {
    product(&simplex(1), &simplex(1)).0
}

/// Every named fixture.
pub fn all() -> Vec<(&'static str, OrderedComplex)> {
    vec![
        ("point", point()),
        ("interval", simplex(1)),
        ("triangle", simplex(2)),
        ("tetrahedron", simplex(3)),
        ("circle", circle()),
        ("sphere2", sphere2()),
        ("cone_circle", cone_circle()),
        ("rp2", rp2()),
        ("rp3", rp3()),
        ("torus", torus()),
        ("klein_bottle", klein_bottle()),
        ("square", square()),
    ]
}

pub fn by_name(name: &str) -> Option<OrderedComplex> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, k)| k)
}
