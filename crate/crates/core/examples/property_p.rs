//! Certifies squarefree, coprime initial terms for determinantal and
//! pfaffian ideals.

use liaison::algebra::Polynomial;
use liaison::families::{build_matrix, minors_ideal, pfaffian_ideal, MatrixSpec};
use liaison::groebner::Session;
use liaison::link::property_p_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = Session::default();
    let families = [
        minors_ideal(&build_matrix(MatrixSpec::Generic { m: 2, n: 4 }, 0)?, 2)?,
        pfaffian_ideal(&build_matrix(MatrixSpec::Alternating { k: 5 }, 0)?)?,
    ];
    for f in &families {
        let order = f.order().expect("family order");
        let cert = property_p_check(&f.ideal, &f.alpha(), &order, None, &session)?;
        println!("{:?}: valid = {}, height = {}", f.kind, cert.is_valid(), cert.height);
        for (a, lead) in cert.alpha.iter().zip(&cert.initial_terms) {
            let lead = lead
                .as_ref()
                .map(|m| Polynomial::monomial(f.ring(), m.clone(), f.ring().field().one()).to_string())
                .unwrap_or_default();
            println!("  in({a}) = {lead}");
        }
    }
    Ok(())
}
