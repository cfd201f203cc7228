//! Reduced Gröbner bases, membership, intersection and quotients.

use liaison::algebra::{parse_ideal, parse_polynomial, RingSpec, TermOrderSpec};
use liaison::groebner::{GroebnerBasis, IdealHandle, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = RingSpec::new(&["x", "y", "z"], 0)?;
    let session = Session::default();

    let gens = parse_ideal("x^2 - y, x*y - z, y^2 - x*z", &r)?;
    let lex = TermOrderSpec::lex_natural(3);
    let gb = GroebnerBasis::compute(&r, &gens, &lex, &session)?;
    println!("lex basis of the twisted cubic:");
    for g in gb.elements() {
        println!("  {g}");
    }
    let probe = parse_polynomial("x^3 - z", &r)?;
    println!("x^3 - z in the ideal: {}", gb.contains(&probe)?);

    let i = IdealHandle::new(&r, parse_ideal("x*y, x*z", &r)?)?;
    let j = IdealHandle::new(&r, parse_ideal("y, z", &r)?)?;
    println!("I ∩ J = {:?}", i.intersect(&j, &session)?.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("I : J = {:?}", i.colon(&j, &session)?.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("height(I) = {}", i.height(&session)?);
    Ok(())
}
