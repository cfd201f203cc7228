//! Gröbner bases, ideal arithmetic, intersections, colon ideals and heights.

mod basis;
mod engine;
mod ideal;
mod monomial_ideal;
mod session;

pub use basis::{cache_key, normal_form, GroebnerBasis};
pub use ideal::IdealHandle;
pub use monomial_ideal::{DimHeight, MonomialIdeal};
pub use session::{BasisStore, Budget, Session};
