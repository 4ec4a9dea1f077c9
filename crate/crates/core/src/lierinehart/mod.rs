//! Lie-Rinehart algebras free over a quotient ring, their modules, Chevalley-Eilenberg
//! cohomology, and logarithmic derivation modules.

pub mod algebra;
pub mod ce;
pub mod logder;

pub use algebra::{
    bracket_structure_constants, connection_flatness, lr_check_axioms, AxiomReport, FlatnessReport, LElement, LRModule,
    LieRinehartAlgebra,
};
pub use ce::{ce_cohomology, ce_differential, ce_truncated_complex, Cochain};
pub use logder::{annihilating_derivations, log_derivations, saito_check, LogDerivations};
