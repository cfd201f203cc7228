//! Parsing, arithmetic and leading terms over Q and F_p.

use liaison::algebra::{parse_polynomial, Polynomial, RingSpec, TermOrderSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = RingSpec::new(&["x", "y", "z"], 0)?;
    let f = parse_polynomial("x^2*y - 3/2*z^3 + y", &q)?;
    let g = parse_polynomial("x - z", &q)?;
    println!("f = {f}");
    println!("f*g = {}", &f * &g);
    println!("(f*g)/g = {}", (&f * &g).divide_exact(&g)?);

    for order in [TermOrderSpec::lex_natural(3), TermOrderSpec::degrevlex_natural(3)] {
        let (c, m) = f.leading_term(&order)?;
        let lead = Polynomial::monomial(&q, m, c);
        println!("{:?}: leading term {lead}", order.kind());
    }

    let f2 = RingSpec::new(&["x", "y"], 2)?;
    let h = parse_polynomial("x + y", &f2)?;
    println!("over F2, (x + y)^2 = {}", h.pow(2));
    Ok(())
}
