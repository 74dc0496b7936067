use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use super::chain::{Cellular, IntChainComplex};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;

/// Finite simplicial complex on a totally ordered vertex set. Simplices are
/// stored as increasing vertex lists, grouped by dimension and sorted.
#[derive(Clone, Debug)]
pub struct OrderedComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    chain: IntChainComplex,
}

impl PartialEq for OrderedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl Eq for OrderedComplex {}

impl OrderedComplex {
    /// Builds a complex from an explicit simplex list, rejecting sets that are
    /// not closed under faces.
    pub fn new(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            let mut s = s;
            s.sort_unstable();
            if s.is_empty() {
                continue;
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            set.insert(s);
        }
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for k in 0..s.len() {
                let mut face = s.clone();
                face.remove(k);
                if !set.contains(&face) {
                    return Err(Error::NotClosed {
                        simplex: s.clone(),
                        missing: face,
                    });
                }
            }
        }
        Ok(Self::from_closed(vertices, set))
    }

    /// Complex generated by the given simplices and all their faces.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Self {
        let names = (0..n_vertices).map(|i| i.to_string()).collect();
        Self::from_facets_named(names, facets)
    }

    pub fn from_facets_named(vertices: Vec<String>, facets: &[Vec<usize>]) -> Self {
        let mut set = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                set.insert(face);
            }
        }
        Self::from_closed(vertices, set)
    }

    fn from_closed(vertices: Vec<String>, set: BTreeSet<Vec<usize>>) -> Self {
        let top = set.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for s in set {
            simplices[s.len() - 1].push(s);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let chain = build_chain(&vertices, &simplices, &index);
        OrderedComplex {
            vertices,
            simplices,
            index,
            chain,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().flatten()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn chain_complex(&self) -> &IntChainComplex {
        &self.chain
    }

    /// Subcomplex generated by the given simplices (each must belong to `self`).
    pub fn subcomplex(&self, facets: &[Vec<usize>]) -> Result<OrderedComplex> {
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if !self.contains(&s) {
                return Err(Error::InvalidComplex(format!("{s:?} is not a simplex")));
            }
        }
        Ok(Self::from_facets_named(self.vertices.clone(), facets))
    }

    /// Whether every simplex of `other` is a simplex of `self` (same vertex set).
    pub fn contains_complex(&self, other: &OrderedComplex) -> bool {
        other.all_simplices().all(|s| self.contains(s))
    }

    /// Intersection with another complex on the same vertex set.
    pub fn intersection(&self, other: &OrderedComplex) -> OrderedComplex {
        let set: BTreeSet<Vec<usize>> = self
            .all_simplices()
            .filter(|s| other.contains(s))
            .cloned()
            .collect();
        Self::from_closed(self.vertices.clone(), set)
    }
}

fn build_chain(
    vertices: &[String],
    simplices: &[Vec<Vec<usize>>],
    index: &[HashMap<Vec<usize>, usize>],
) -> IntChainComplex {
    let labels: Vec<Vec<String>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| {
                    let names: Vec<&str> = s.iter().map(|&v| vertices[v].as_str()).collect();
                    format!("[{}]", names.join(","))
                })
                .collect()
        })
        .collect();
    let mut boundaries = Vec::with_capacity(simplices.len());
    for (d, level) in simplices.iter().enumerate() {
        if d == 0 {
            boundaries.push(IntMatrix::zeros(0, level.len()));
            continue;
        }
        let mut b = IntMatrix::zeros(simplices[d - 1].len(), level.len());
        for (j, s) in level.iter().enumerate() {
            for k in 0..s.len() {
                let mut face = s.clone();
                face.remove(k);
                let i = index[d - 1][&face];
                b[(i, j)] = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(b);
    }
    IntChainComplex::new(labels, boundaries).expect("simplicial boundary squares to zero")
}

impl Cellular for OrderedComplex {
    fn chain(&self) -> &IntChainComplex {
        &self.chain
    }

    fn front_back(&self, n: usize, cell: usize, p: usize) -> (usize, usize) {
        let s = &self.simplices[n][cell];
        let front = self.index[p][&s[..=p]];
        let back = self.index[n - p][&s[p..]];
        (front, back)
    }
}

/// Standard ordered simplicial chain complex of `k`.
pub fn chain_complex(k: &OrderedComplex) -> IntChainComplex {
    k.chain.clone()
}

/// Vertex map between ordered complexes that sends simplices to simplices
/// and is weakly monotone on every simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: OrderedComplex,
    target: OrderedComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: OrderedComplex, target: OrderedComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.n_vertices() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} vertices",
                vertex_map.len(),
                source.n_vertices()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= target.n_vertices()) {
            return Err(Error::InvalidMap(format!("target vertex {w} out of range")));
        }
        for s in source.all_simplices() {
            if s.windows(2).any(|w| vertex_map[w[0]] > vertex_map[w[1]]) {
                return Err(Error::InvalidMap(format!("not monotone on {s:?}")));
            }
            let mut img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            img.dedup();
            if !target.contains(&img) {
                return Err(Error::InvalidMap(format!("image of {s:?} is not a simplex")));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    pub fn identity(k: &OrderedComplex) -> Self {
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map: (0..k.n_vertices()).collect(),
        }
    }

    pub fn source(&self) -> &OrderedComplex {
        &self.source
    }

    pub fn target(&self) -> &OrderedComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Image simplex with repeats removed.
    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
        img.dedup();
        img
    }

    /// Pullback of a cochain value table: `(f^*α)(σ) = α(f σ)` when `f σ`
    /// keeps its dimension, and 0 otherwise.
    pub fn pullback_values(&self, degree: usize, values: &[BigInt]) -> Vec<BigInt> {
        self.source
            .simplices(degree)
            .iter()
            .map(|s| {
                let img = self.image(s);
                if img.len() == s.len() {
                    values[self.target.index_of(&img).expect("image is a simplex")].clone()
                } else {
                    BigInt::from(0)
                }
            })
            .collect()
    }

    pub fn compose(&self, outer: &SimplicialMap) -> Result<SimplicialMap> {
        let vm = self.vertex_map.iter().map(|&v| outer.vertex_map[v]).collect();
        SimplicialMap::new(self.source.clone(), outer.target.clone(), vm)
    }
}

/// Staircase triangulation of `k × l` on the lexicographically ordered vertex
/// set `k_0 × l_0`, together with both projections.
pub fn product(k: &OrderedComplex, l: &OrderedComplex) -> (OrderedComplex, SimplicialMap, SimplicialMap) {
    let nl = l.n_vertices();
    let names: Vec<String> = k
        .vertices()
        .iter()
        .flat_map(|a| l.vertices().iter().map(move |b| format!("{a}x{b}")))
        .collect();
    let kmax = maximal_simplices(k);
    let lmax = maximal_simplices(l);
    let mut facets = Vec::new();
    for s in &kmax {
        for t in &lmax {
            staircases(s, t, nl, &mut facets);
        }
    }
    let prod = OrderedComplex::from_facets_named(names, &facets);
    let p1 = SimplicialMap::new(
        prod.clone(),
        k.clone(),
        (0..prod.n_vertices()).map(|v| v / nl).collect(),
    )
    .expect("projection is simplicial");
    let p2 = SimplicialMap::new(
        prod.clone(),
        l.clone(),
        (0..prod.n_vertices()).map(|v| v % nl).collect(),
    )
    .expect("projection is simplicial");
    (prod, p1, p2)
}

pub fn maximal_simplices(k: &OrderedComplex) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for d in 0..=k.dim().unwrap_or(0) {
        for s in k.simplices(d) {
            let is_face = k
                .simplices(d + 1)
                .iter()
                .any(|t| s.iter().all(|v| t.binary_search(v).is_ok()));
            if !is_face {
                out.push(s.clone());
            }
        }
    }
    out
}

/// All maximal monotone lattice paths through the grid `s × t`.
fn staircases(s: &[usize], t: &[usize], nl: usize, out: &mut Vec<Vec<usize>>) {
    fn walk(s: &[usize], t: &[usize], i: usize, j: usize, nl: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(s[i] * nl + t[j]);
        if i + 1 == s.len() && j + 1 == t.len() {
            out.push(path.clone());
        } else {
            if i + 1 < s.len() {
                walk(s, t, i + 1, j, nl, path, out);
            }
            if j + 1 < t.len() {
                walk(s, t, i, j + 1, nl, path, out);
            }
        }
        path.pop();
    }
    let mut path = Vec::new();
    walk(s, t, 0, 0, nl, &mut path, out);
}
