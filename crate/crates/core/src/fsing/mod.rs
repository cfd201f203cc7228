//! Frobenius colon ideals, Fedder's F-purity criterion, ν tables, F-pure
//! threshold bounds and exact thresholds of monomial ideals.

mod fedder;
mod lct;
mod nu;

pub use fedder::{
    fedder_fpure, frobenius_colon, linkage_fedder_containment, outside_frobenius_power, splitting_probe,
    FPurityVerdict, LinkageFedder, SplittingProbe,
};
pub use lct::{monomial_lct, NewtonLP};
pub use nu::{fpt_bounds, nu, nu_table, nu_witness_fast, FptBounds, NuTable};
