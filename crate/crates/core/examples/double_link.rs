//! Linking twice through a regular sequence recovers the ideal.

use liaison::families::{build_matrix, minors_ideal, MatrixSpec};
use liaison::groebner::Session;
use liaison::link::double_link_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    for p in [0, 2, 3] {
        let f = minors_ideal(&build_matrix(MatrixSpec::Generic { m: 2, n: 3 }, p)?, 2)?;
        let order = f.order().expect("family order");
        let d = double_link_check(&f.ideal, &f.alpha(), &order, &session)?;
        println!("char {p}: link has {} generators, double link equals I: {}", d.link.generators().len(), d.holds);
    }
    Ok(())
}
