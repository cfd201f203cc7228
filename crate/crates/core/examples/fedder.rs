//! F-purity through Fedder's criterion.

use liaison::algebra::{parse_ideal, RingSpec};
use liaison::families::{build_matrix, minors_ideal, MatrixSpec};
use liaison::fsing::{fedder_fpure, linkage_fedder_containment};
use liaison::groebner::{IdealHandle, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    for p in [2, 3] {
        let f = minors_ideal(&build_matrix(MatrixSpec::Generic { m: 2, n: 3 }, p)?, 2)?;
        let v = fedder_fpure(&f.ideal, p, &session)?;
        let w = v.witness.map(|w| w.to_string()).unwrap_or_default();
        println!("2x2 minors over F{p}: F-pure = {}, witness {w}", v.f_pure);
        let c = linkage_fedder_containment(&f.alpha(), &f.ideal, p, &session)?;
        println!("  linkage containment holds: {}", c.holds);
    }
    let r = RingSpec::new(&["x", "y"], 2)?;
    let cubic = IdealHandle::new(&r, parse_ideal("x^3 + y^3", &r)?)?;
    println!("x^3 + y^3 over F2: F-pure = {}", fedder_fpure(&cubic, 2, &session)?.f_pure);
    Ok(())
}
