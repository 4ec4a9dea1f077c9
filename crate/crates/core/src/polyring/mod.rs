//! Polynomial rings over Q, their quotients, and submodules of free modules.

pub mod groebner;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod quotient;

pub use groebner::{buchberger, divide, normal_form, s_polynomial, GroebnerBasis};
pub use module::{module_groebner, syzygy_basis, ModuleGroebnerBasis, ModuleOrder, ModuleVector};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::poly_parse;
pub use poly::Polynomial;
pub use quotient::QuotientRing;
