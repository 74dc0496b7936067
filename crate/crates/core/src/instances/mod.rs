//! Concrete filtered complexes: skeletal (Atiyah–Hirzebruch type), Serre type
//! along a simplicial map, product filtrations, group cohomology pages and
//! Čech descent.

pub mod ahss;
pub mod cochains;
pub mod descent;
pub mod group;
pub mod product;
pub mod serre;
pub mod suite;
pub mod tower;

pub use ahss::{ahss_comparison, build_ahss, build_ahss_with, verify_e1, Ahss, AhssComparison, CupSign};
pub use cochains::{cup_pairing, filtered_cochains, CellIndex};
pub use descent::{build_descent, is_acyclic, CoverData};
pub use group::{build_group_page, GroupPage};
pub use product::{compare_product_filtrations, product_filtrations, FiltrationComparison, ProductFiltrations};
pub use serre::{build_serre, build_skeletal};
pub use suite::{sign_suite, Assertion};
pub use tower::{parse_ring, Tower, TowerBody, TowerKind, TowerSpec};
