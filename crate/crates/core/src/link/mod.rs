//! Generic links, residual intersections, lifted term orders and
//! property-P certificates.

mod certificate;
mod generic;
mod layout;

pub use certificate::{
    a_invariant_universal_link, certified_fpt, koley_varbaro_witness, propagate_property_p, property_p_check,
    AInvariantInput, CertifiedFpt, CertifiedIdeal, HeightSource, KvWitness, PChecks, Propagation, PropagationMode,
    PropertyPCertificate,
};
pub use generic::{
    ambient_link, double_link_check, generic_link, generic_residual_intersection, iterated_generic_link, DoubleLink,
    IteratedLinks, LinkResult, ResidualIntersection, RiMethod,
};
pub use layout::{lifted_order, LiftMode, YLayout};
