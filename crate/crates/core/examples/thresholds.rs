//! ν-invariants, F-pure threshold bounds and monomial log canonical thresholds.

use liaison::algebra::{parse_ideal, RingSpec};
use liaison::families::{build_matrix, minors_ideal, MatrixSpec};
use liaison::fsing::{fpt_bounds, monomial_lct};
use liaison::groebner::{IdealHandle, Session};
use liaison::link::{a_invariant_universal_link, AInvariantInput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    let f = minors_ideal(&build_matrix(MatrixSpec::Generic { m: 2, n: 3 }, 2)?, 2)?;
    let bounds = fpt_bounds(&f.ideal, 2, 2, &session)?;
    println!("nu table over F2: {:?}", bounds.table.entries);
    println!("fpt in [{}, {}]", bounds.lower, bounds.upper);

    let r = RingSpec::new(&["x1", "x2", "x3"], 0)?;
    let i = IdealHandle::new(&r, parse_ideal("x1^2*x2, x3^3", &r)?)?;
    let lp = monomial_lct(&i)?;
    println!("lct(x1^2 x2, x3^3) = {}", lp.value);

    let a = a_invariant_universal_link(AInvariantInput { n: 21, d: 2, g: 12 })?;
    println!("a-invariant of the universal link of 2x2 minors of a 3x7 matrix: {a}");
    Ok(())
}
