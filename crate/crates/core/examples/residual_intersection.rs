//! Generic residual intersections by closed form and by colon.

use liaison::algebra::{parse_ideal, RingSpec};
use liaison::groebner::Session;
use liaison::link::{generic_residual_intersection, RiMethod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    let r = RingSpec::new(&["x", "y"], 0)?;
    let alpha = parse_ideal("x, y", &r)?;
    for s in 2..=3 {
        let ri = generic_residual_intersection(&alpha, s, RiMethod::CrossCheck, &session)?;
        println!("s = {s}: {} generators, height {}", ri.ideal.generators().len(), ri.ideal.height(&session)?);
        for g in ri.ideal.generators() {
            println!("  {g}");
        }
    }
    Ok(())
}
