//! Ordered simplicial complexes, group nerves, chain and cochain complexes,
//! and cup products with the signed conventions
//! `(δα)(c) = -(-1)^p α(∂c)` and `(α∪β) = (-1)^{pq} α(front)·β(back)`.

pub mod chain;
pub mod cochain;
pub mod complex;
pub mod fixtures;
pub mod io;
pub mod nerve;

pub use chain::{cohomology, cohomology_groups, homology_groups, Cellular, IntChainComplex};
pub use cochain::{classical_iso, cup, delta, ClassicalIso, Cochain};
pub use complex::{chain_complex, product, OrderedComplex, SimplicialMap};
pub use nerve::{nerve, BarComplex, FiniteGroup};
