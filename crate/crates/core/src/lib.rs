pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod fsing;
pub mod groebner;
pub mod link;

pub use error::{Error, Result};
