//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, subquotients and induced maps.

pub mod group;
pub mod matrix;
pub mod smith;
pub mod subquotient;

pub use group::{cokernel, homology, FgGroup, GroupHom};
pub use matrix::{big_vec, IntMatrix};
pub use smith::{
    in_span, kernel_basis, lattice_basis, preimage, preimage_mod, smith, solve, solve_with,
    SmithDecomposition,
};
pub use subquotient::{induced_map, Subquotient};
