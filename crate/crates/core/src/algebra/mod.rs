//! Exact coefficients, monomials, term orders, sparse polynomials, polynomial
//! matrices and the text parser.

pub mod coeff;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use coeff::{Coefficient, Field};
pub use matrix::PolyMatrix;
pub use monomial::{squarefree_and_coprime, Monomial, SquarefreeCoprime};
pub use order::{BlockKind, OrderKind, TermOrderSpec};
pub use parse::{parse_ideal, parse_polynomial};
pub use poly::Polynomial;
pub use ring::{Ring, RingSpec};
