//! Multiplicative spectral sequences of finite filtered cochain complexes,
//! computed with exact integer arithmetic.

pub mod couple;
pub mod error;
pub mod exactlin;
pub mod graded;
pub mod instances;
pub mod io;
pub mod simplicial;
pub mod ssengine;

pub use error::{Error, Result};
