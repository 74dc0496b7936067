//! Spectral sequence of a finite filtered cochain complex: pages as explicit
//! subquotients, their differentials, `E_∞` with an abutment certificate, and
//! pairings induced by chain-level products.

pub mod complex;
pub mod export;
pub mod page;
pub mod pairing;

pub use complex::{check_pairing, Bidegree, Cell, ChainPairing, FilteredCochainComplex};
pub use export::{PageFile, PairingFile, VerdictFile};
pub use page::{abutment_check, d_shift, e_infinity, page, pages, verify_homology_step, AbutmentReport, Page, PageData};
pub use pairing::{compare_global_iso, leibniz_check, page_pairing, Identification, IsoVerdict, LeibnizReport, PagePairing};
