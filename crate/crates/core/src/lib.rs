pub mod complex;
pub mod derham;
pub mod envelope;
pub mod error;
pub mod lierinehart;
pub mod polyring;
pub mod qlinalg;
pub mod wedge;

pub use error::{Error, Result};

pub use complex::CohomologyReport;
pub use lierinehart::{LRModule, LieRinehartAlgebra};
pub use polyring::{MonomialOrder, Polynomial, QuotientRing};
pub use qlinalg::{QMatrix, Rational};
