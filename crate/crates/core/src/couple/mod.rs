//! Exact couples, their derived couples, the integral Bockstein couple and
//! localization at a periodicity operator.

pub mod bockstein;
pub mod exact;
pub mod export;
pub mod localize;

pub use bockstein::{bockstein_couple, bockstein_pages, bockstein_pairing, direct_page, free_part_matches, summary_bidegree, BocksteinPages};
pub use exact::{ExactCouple, Shifts};
pub use export::CoupleFile;
pub use localize::{beta_localize, k_collapse_couple, Localized};
