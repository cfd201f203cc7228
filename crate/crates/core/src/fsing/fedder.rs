use crate::algebra::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{IdealHandle, Session};

/// Outcome of Fedder's criterion at a prime.
#[derive(Clone, Debug)]
pub struct FPurityVerdict {
    pub f_pure: bool,
    pub prime: u64,
    /// A generator of `I^[p] : I` outside `m^[p]`, present iff `f_pure`.
    pub witness: Option<Polynomial>,
}

/// Result of the containment `a^[p] : a ⊆ (I^[p] : I) ∩ (J^[p] : J)`.
#[derive(Clone, Debug)]
pub struct LinkageFedder {
    /// The link `J = (alpha) : I`.
    pub link: IdealHandle,
    pub holds: bool,
    pub in_first: bool,
    pub in_link: bool,
}

/// Outcome of probing `c^(p-2) g^(p-1)` against `J^[p] : J` and `m^[p]`.
#[derive(Clone, Debug)]
pub struct SplittingProbe {
    pub element: Polynomial,
    pub in_frobenius_colon: bool,
    pub outside_frobenius_power: bool,
}

impl SplittingProbe {
    pub fn holds(&self) -> bool {
        self.in_frobenius_colon && self.outside_frobenius_power
    }
}

pub(crate) fn check_characteristic(ring: &Ring, p: u64) -> Result<()> {
    if ring.characteristic() != p || p == 0 {
        return Err(Error::Characteristic { ring: ring.characteristic(), requested: p });
    }
    Ok(())
}

pub(crate) fn prime_power(p: u64, e: u32) -> Result<u32> {
    p.checked_pow(e)
        .and_then(|q| u32::try_from(q).ok())
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} is too large")))
}

/// A polynomial lies outside `m^[q]` iff one of its terms has every
/// exponent below `q`.
pub fn outside_frobenius_power(f: &Polynomial, q: u64) -> bool {
    f.terms().iter().any(|(m, _)| m.all_below(q))
}

/// `I^[p^e] : I`.
pub fn frobenius_colon(ideal: &IdealHandle, p: u64, e: u32, session: &Session) -> Result<IdealHandle> {
    check_characteristic(ideal.ring(), p)?;
    if e == 0 {
        return Err(Error::InvalidArgument("Frobenius exponent must be positive".into()));
    }
    let q = prime_power(p, e)?;
    ideal.bracket_power(q)?.colon(ideal, session)
}

fn check_proper(ideal: &IdealHandle, session: &Session) -> Result<()> {
    if ideal.is_zero() {
        return Ok(());
    }
    if ideal.default_groebner(session)?.is_unit() {
        return Err(Error::Precondition("the ideal is the whole ring".into()));
    }
    Ok(())
}

/// Fedder's criterion: `R/I` is F-pure iff `I^[p] : I ⊄ m^[p]`.
pub fn fedder_fpure(ideal: &IdealHandle, p: u64, session: &Session) -> Result<FPurityVerdict> {
    check_characteristic(ideal.ring(), p)?;
    if !ideal.is_homogeneous() {
        return Err(Error::Precondition("Fedder's criterion needs a homogeneous ideal".into()));
    }
    check_proper(ideal, session)?;
    let colon = frobenius_colon(ideal, p, 1, session)?;
    let witness = colon.generators().iter().find(|g| outside_frobenius_power(g, p)).cloned();
    Ok(FPurityVerdict { f_pure: witness.is_some(), prime: p, witness })
}

/// Computes `J = (alpha) : I` and checks the linkage containment.
pub fn linkage_fedder_containment(
    alpha: &[Polynomial],
    ideal: &IdealHandle,
    p: u64,
    session: &Session,
) -> Result<LinkageFedder> {
    check_characteristic(ideal.ring(), p)?;
    let a = IdealHandle::new(ideal.ring(), alpha.to_vec())?;
    if a.is_zero() {
        return Err(Error::Precondition("empty sequence".into()));
    }
    if !ideal.contains(&a, session)? {
        return Err(Error::Precondition("(alpha) is not contained in I".into()));
    }
    if a.contains(ideal, session)? {
        return Err(Error::Precondition("(alpha) equals I, so there is no proper link".into()));
    }
    let link = a.colon(ideal, session)?;
    let lhs = frobenius_colon(&a, p, 1, session)?;
    let in_first = frobenius_colon(ideal, p, 1, session)?.contains(&lhs, session)?;
    let in_link = frobenius_colon(&link, p, 1, session)?.contains(&lhs, session)?;
    Ok(LinkageFedder { link, holds: in_first && in_link, in_first, in_link })
}

/// Checks whether `c^(p-2) g^(p-1)` lies in `J^[p] : J` but not in `m^[p]`.
pub fn splitting_probe(
    ideal: &IdealHandle,
    c: &Polynomial,
    g: &Polynomial,
    p: u64,
    session: &Session,
) -> Result<SplittingProbe> {
    check_characteristic(ideal.ring(), p)?;
    check_proper(ideal, session)?;
    let e = u32::try_from(p - 1).map_err(|_| Error::InvalidArgument("prime too large".into()))?;
    // c^0 = 1 when p = 2
    let element = c.pow(e - 1).checked_mul(&g.pow(e))?;
    if element.ring() != ideal.ring() {
        return Err(Error::RingMismatch("probe element from another ring".into()));
    }
    let colon = frobenius_colon(ideal, p, 1, session)?;
    let in_frobenius_colon = colon.contains_polynomial(&element, session)?;
    let outside = outside_frobenius_power(&element, p);
    Ok(SplittingProbe { element, in_frobenius_colon, outside_frobenius_power: outside })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ideal, parse_polynomial, RingSpec};

    fn ideal(text: &str, ring: &Ring) -> IdealHandle {
        IdealHandle::new(ring, parse_ideal(text, ring).unwrap()).unwrap()
    }

    #[test]
    fn frobenius_colons_of_monomials() {
        let r = RingSpec::new(&["x", "y"], 2).unwrap();
        let s = Session::default();
        let c = frobenius_colon(&ideal("x*y", &r), 2, 1, &s).unwrap();
        assert!(c.equals(&ideal("x*y", &r), &s).unwrap());
        let c = frobenius_colon(&ideal("x^2", &r), 2, 1, &s).unwrap();
        assert!(c.equals(&ideal("x^2", &r), &s).unwrap());
        assert!(matches!(frobenius_colon(&ideal("x", &r), 3, 1, &s), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn fedder_on_monomial_ideals() {
        let r = RingSpec::new(&["x", "y"], 2).unwrap();
        let s = Session::default();
        let v = fedder_fpure(&ideal("x*y", &r), 2, &s).unwrap();
        assert!(v.f_pure);
        assert_eq!(v.witness.unwrap().to_string(), "x*y");
        let r1 = RingSpec::new(&["x"], 2).unwrap();
        let v = fedder_fpure(&ideal("x^2", &r1), 2, &s).unwrap();
        assert!(!v.f_pure && v.witness.is_none());
    }

    #[test]
    fn linkage_containment_boundaries() {
        let r = RingSpec::new(&["x", "y"], 2).unwrap();
        let s = Session::default();
        let i = ideal("x, y", &r);
        let alpha = parse_ideal("x, y", &r).unwrap();
        assert!(matches!(linkage_fedder_containment(&alpha, &i, 2, &s), Err(Error::Precondition(_))));
        let alpha = parse_ideal("x, y^2", &r).unwrap();
        let out = linkage_fedder_containment(&alpha, &i, 2, &s).unwrap();
        assert!(out.link.equals(&i, &s).unwrap());
        assert!(out.holds);
    }

    #[test]
    fn splitting_probe_on_a_principal_monomial() {
        let r = RingSpec::new(&["x", "y"], 3).unwrap();
        let s = Session::default();
        let j = ideal("x*y", &r);
        let c = parse_polynomial("x", &r).unwrap();
        let g = parse_polynomial("x*y", &r).unwrap();
        // x (xy)^2 = x^3 y^2 lies in (x^2 y^2) but also in m^[3]
        let probe = splitting_probe(&j, &c, &g, 3, &s).unwrap();
        assert!(probe.in_frobenius_colon);
        assert!(!probe.outside_frobenius_power);
        assert!(!probe.holds());
        let sq = ideal("x^2", &r);
        assert!(!splitting_probe(&sq, &c, &g, 3, &s).unwrap().holds());
    }
}
