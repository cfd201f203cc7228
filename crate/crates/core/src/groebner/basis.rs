use sha2::{Digest, Sha256};

use crate::algebra::{Monomial, Polynomial, Ring, TermOrderSpec};
use crate::error::{Error, Result};

use super::engine::{EPoly, Engine};
use super::monomial_ideal::MonomialIdeal;
use super::session::Session;

/// A reduced Gröbner basis: monic, tail-reduced, sorted by increasing
/// leading monomial under its order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrderSpec,
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
    engine_form: Vec<EPoly>,
}

fn check_order(ring: &Ring, order: &TermOrderSpec) -> Result<()> {
    if order.nvars() != ring.nvars() {
        return Err(Error::DimensionMismatch { expected: ring.nvars(), found: order.nvars() });
    }
    Ok(())
}

fn check_ring(ring: &Ring, f: &Polynomial) -> Result<()> {
    if f.ring() != ring {
        return Err(Error::RingMismatch(format!(
            "polynomial over [{}] used in ring [{}]",
            f.ring().variables().join(","),
            ring.variables().join(",")
        )));
    }
    Ok(())
}

/// Content digest of (ring, generator set, order). Generator order does not
/// matter since the reduced basis only depends on the ideal.
pub fn cache_key(ring: &Ring, generators: &[Polynomial], order: &TermOrderSpec) -> String {
    let mut gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
    gens.sort();
    gens.dedup();
    let mut h = Sha256::new();
    h.update(ring.variables().join(",").as_bytes());
    h.update(b"\n");
    h.update(ring.characteristic().to_string().as_bytes());
    h.update(b"\n");
    h.update(order.digest().as_bytes());
    for g in &gens {
        h.update(b"\n");
        h.update(g.as_bytes());
    }
    hex::encode(h.finalize())
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `generators`,
    /// consulting the session's persistent store when one is attached.
    pub fn compute(ring: &Ring, generators: &[Polynomial], order: &TermOrderSpec, session: &Session) -> Result<Self> {
        check_order(ring, order)?;
        for g in generators {
            check_ring(ring, g)?;
        }
        session.check_variables(ring.nvars())?;
        let key = session.store().map(|_| cache_key(ring, generators, order));
        if let (Some(store), Some(key)) = (session.store(), key.as_ref()) {
            if let Some(elements) = store.load(key, ring) {
                if let Ok(gb) = Self::from_reduced(ring, order, elements) {
                    return Ok(gb);
                }
            }
        }
        let mut engine = Engine::new(order, ring.field(), session);
        let input: Vec<EPoly> = generators.iter().map(|g| engine.import(g)).collect();
        let basis = engine.groebner(input)?;
        let elements: Vec<Polynomial> = basis.iter().map(|e| engine.export(e, ring)).collect();
        if let (Some(store), Some(key)) = (session.store(), key.as_ref()) {
            store.save(key, &elements);
        }
        Self::from_reduced(ring, order, elements)
    }

    /// Wraps polynomials already known to form a reduced basis, restoring
    /// the canonical element order.
    fn from_reduced(ring: &Ring, order: &TermOrderSpec, elements: Vec<Polynomial>) -> Result<Self> {
        let session = Session::unbounded();
        let engine = Engine::new(order, ring.field(), &session);
        let mut pairs = Vec::with_capacity(elements.len());
        for e in elements {
            check_ring(ring, &e)?;
            let lead = e.leading_monomial(order)?;
            pairs.push((lead, e));
        }
        pairs.sort_by(|a, b| order.cmp_unchecked(a.0.exponents(), b.0.exponents()));
        let engine_form = pairs.iter().map(|(_, e)| engine.import_monic(e)).collect();
        let (leading, elements) = pairs.into_iter().unzip();
        Ok(GroebnerBasis { ring: ring.clone(), order: order.clone(), elements, leading, engine_form })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &TermOrderSpec {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    /// The basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|m| m.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, f)?;
        let session = Session::unbounded();
        let mut engine = Engine::new(&self.order, self.ring.field(), &session);
        let refs: Vec<&EPoly> = self.engine_form.iter().collect();
        let r = engine.reduce(&engine.import(f), &refs)?;
        Ok(engine.export(&r, &self.ring))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), self.leading.clone())
    }

    /// Independent check of the Buchberger criterion: every S-polynomial
    /// reduces to zero modulo the elements.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        let session = Session::unbounded();
        let mut engine = Engine::new(&self.order, self.ring.field(), &session);
        engine.is_groebner(&self.engine_form)
    }
}

/// Remainder of `f` on division by `basis` under `order`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &TermOrderSpec) -> Result<Polynomial> {
    let ring = f.ring();
    check_order(ring, order)?;
    for b in basis {
        check_ring(ring, b)?;
        if b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let session = Session::unbounded();
    let mut engine = Engine::new(order, ring.field(), &session);
    let reducers: Vec<EPoly> = basis.iter().map(|b| engine.import_monic(b)).collect();
    let refs: Vec<&EPoly> = reducers.iter().collect();
    let r = engine.reduce(&engine.import(f), &refs)?;
    Ok(engine.export(&r, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ideal, parse_polynomial, RingSpec};

    #[test]
    fn single_division_step() {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let lex = TermOrderSpec::lex_natural(2);
        let f = parse_polynomial("x^2*y + y", &r).unwrap();
        let g = parse_polynomial("x^2 - 1", &r).unwrap();
        assert_eq!(normal_form(&f, &[g], &lex).unwrap().to_string(), "2*y");
        let x2 = parse_polynomial("x^2", &r).unwrap();
        let x = parse_polynomial("x", &r).unwrap();
        assert!(normal_form(&x2, &[x], &lex).unwrap().is_zero());
    }

    #[test]
    fn minors_of_two_by_three_are_a_basis() {
        let r = RingSpec::new(&["x11", "x12", "x13", "x21", "x22", "x23"], 0).unwrap();
        let gens = parse_ideal("x11*x22 - x12*x21, x11*x23 - x13*x21, x12*x23 - x13*x22", &r).unwrap();
        let gb = GroebnerBasis::compute(&r, &gens, &TermOrderSpec::lex_natural(6), &Session::default()).unwrap();
        assert_eq!(gb.elements().len(), 3);
        for g in &gens {
            assert!(gb.elements().contains(g));
        }
        let lead: Vec<String> = gb.leading_monomials().iter().map(|m| format!("{:?}", m.exponents())).collect();
        assert_eq!(lead.len(), 3);
        assert!(gb.satisfies_buchberger_criterion().unwrap());
    }

    #[test]
    fn lex_basis_of_a_curve() {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let gens = parse_ideal("x - y^2, y - x^2", &r).unwrap();
        let gb = GroebnerBasis::compute(&r, &gens, &TermOrderSpec::lex_natural(2), &Session::default()).unwrap();
        assert!(gb.elements().len() >= 2);
        assert!(gb.satisfies_buchberger_criterion().unwrap());
        assert_eq!(gb.elements()[0].to_string(), "y^4 - y");
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn unit_ideal_and_budget() {
        let r = RingSpec::new(&["x", "y"], 3).unwrap();
        let gens = parse_ideal("x*y - 1, x", &r).unwrap();
        let gb = GroebnerBasis::compute(&r, &gens, &r.default_order(), &Session::default()).unwrap();
        assert!(gb.is_unit());
        let tight = Session::new(crate::groebner::Budget { max_degree: 1, ..Default::default() });
        let gens = parse_ideal("x^2 - y, x*y - 1", &r).unwrap();
        assert!(matches!(GroebnerBasis::compute(&r, &gens, &r.default_order(), &tight), Err(Error::BudgetExceeded(_))));
    }
}
