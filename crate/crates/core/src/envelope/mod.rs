//! Truncated universal enveloping algebras, the Koszul resolution, symmetrization, jets and
//! cobar complexes.

pub mod cobar;
pub mod hkr;
pub mod jet;
pub mod koszul;
pub mod uea;

pub use cobar::{cobar_truncated_cohomology, CobarSide};
pub use hkr::{alt_map, hkr_check, proj_map, HkrReport, TensorP, WedgeElement};
pub use jet::{JetAlgebra, TruncatedJet};
pub use koszul::{
    evaluate_cochain, hom_complex_compare, koszul_checks, koszul_differential, koszul_generator, reduced_koszul_differential,
    HomComparison, KElement, KoszulReport,
};
pub use uea::{MultiIndex, Tensor2, TruncatedEnveloping, UElement, WordToken};
