//! The generic link of an ideal and its property-P certificate.

use liaison::algebra::{parse_ideal, RingSpec, TermOrderSpec};
use liaison::groebner::{IdealHandle, Session};
use liaison::link::{generic_link, iterated_generic_link, propagate_property_p, property_p_check, PropagationMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    let r = RingSpec::new(&["x", "y"], 0)?;
    let ideal = IdealHandle::new(&r, parse_ideal("x, y", &r)?)?;

    let link = generic_link(&ideal, ideal.generators(), None, &session)?;
    println!("L1 lives in {} variables, height {}", link.extended_ring.nvars(), link.height);
    for g in link.link.generators() {
        println!("  {g}");
    }

    let cert = property_p_check(&ideal, ideal.generators(), &TermOrderSpec::lex_natural(2), None, &session)?;
    let lifted = propagate_property_p(&cert, PropagationMode::Link, &session)?;
    println!("propagated certificate valid: {}", lifted.certificate.is_valid());

    let chain = iterated_generic_link(&ideal, 2, &session)?;
    for (k, step) in chain.steps.iter().enumerate() {
        println!(
            "L{} has {} generators in {} variables",
            k + 1,
            step.link.generators().len(),
            step.extended_ring.nvars()
        );
    }
    Ok(())
}
