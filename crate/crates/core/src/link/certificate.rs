use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{squarefree_and_coprime, Monomial, Polynomial, Ring, TermOrderSpec};
use crate::error::{Error, Result};
use crate::fsing::nu_witness_fast;
use crate::groebner::{IdealHandle, Session};

use super::generic::maximal_minors;
use super::layout::{lifted_order, LiftMode, YLayout};

/// The ideal a certificate speaks about.
#[derive(Clone, Debug)]
pub enum CertifiedIdeal {
    /// Given by generators.
    Generators(IdealHandle),
    /// `numerator : denominator`, kept unevaluated.
    Colon { numerator: IdealHandle, denominator: IdealHandle },
}

impl CertifiedIdeal {
    pub fn ring(&self) -> &Ring {
        match self {
            CertifiedIdeal::Generators(i) => i.ring(),
            CertifiedIdeal::Colon { numerator, .. } => numerator.ring(),
        }
    }

    /// Generators of the ideal; a colon is evaluated by Gröbner bases.
    pub fn generators(&self, session: &Session) -> Result<Vec<Polynomial>> {
        match self {
            CertifiedIdeal::Generators(i) => Ok(i.generators().to_vec()),
            CertifiedIdeal::Colon { numerator, denominator } => {
                Ok(numerator.colon(denominator, session)?.generators().to_vec())
            }
        }
    }

    /// `f` lies in the ideal. A colon contains its numerator, which is all
    /// this checks for colons.
    fn contains_cheaply(&self, f: &Polynomial, session: &Session) -> Result<bool> {
        let i = match self {
            CertifiedIdeal::Generators(i) => i,
            CertifiedIdeal::Colon { numerator, .. } => numerator,
        };
        if i.generators().contains(f) {
            return Ok(true);
        }
        i.contains_polynomial(f, session)
    }
}

/// Where the height in a certificate comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeightSource {
    /// From the initial ideal under the ring's default order.
    Computed,
    /// Supplied by the caller, typically from a closed formula.
    Asserted,
    /// Carried over from the certificate this one was propagated from.
    Propagated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PChecks {
    pub membership: bool,
    pub squarefree: bool,
    pub coprime: bool,
    pub count_equals_height: bool,
}

impl PChecks {
    pub fn all(&self) -> bool {
        self.membership && self.squarefree && self.coprime && self.count_equals_height
    }
}

/// Evidence that `α ⊆ I` has `height(I)` elements whose initial terms are
/// squarefree and pairwise coprime.
#[derive(Clone, Debug)]
pub struct PropertyPCertificate {
    pub ideal: CertifiedIdeal,
    pub order: TermOrderSpec,
    pub alpha: Vec<Polynomial>,
    /// `in(α_i)`, `None` for a zero element.
    pub initial_terms: Vec<Option<Monomial>>,
    pub checks: PChecks,
    pub height: usize,
    pub height_source: HeightSource,
    pub notes: Vec<String>,
}

impl PropertyPCertificate {
    pub fn is_valid(&self) -> bool {
        self.checks.all()
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// Runs the checks again from the stored data.
    pub fn recheck(&self, session: &Session) -> Result<PChecks> {
        let height = match self.height_source {
            HeightSource::Computed => match &self.ideal {
                CertifiedIdeal::Generators(i) => i.height(session)?,
                CertifiedIdeal::Colon { numerator, denominator } => {
                    numerator.colon(denominator, session)?.height(session)?
                }
            },
            _ => self.height,
        };
        let (checks, _) = run_checks(&self.ideal, &self.alpha, &self.order, height, session)?;
        Ok(checks)
    }
}

const UNMIXED_NOTE: &str = "unmixedness of the ideal is assumed, not verified";

fn run_checks(
    ideal: &CertifiedIdeal,
    alpha: &[Polynomial],
    order: &TermOrderSpec,
    height: usize,
    session: &Session,
) -> Result<(PChecks, Vec<Option<Monomial>>)> {
    let initial_terms: Vec<Option<Monomial>> =
        alpha.iter().map(|a| if a.is_zero() { None } else { a.leading_monomial(order).ok() }).collect();
    let mut membership = !alpha.is_empty();
    for a in alpha {
        if !membership {
            break;
        }
        membership = ideal.contains_cheaply(a, session)?;
    }
    let (squarefree, coprime) = if initial_terms.iter().all(Option::is_some) {
        let leads: Vec<Monomial> = initial_terms.iter().flatten().cloned().collect();
        let sc = squarefree_and_coprime(&leads);
        (sc.each_squarefree, sc.pairwise_coprime)
    } else {
        (false, false)
    };
    let checks = PChecks { membership, squarefree, coprime, count_equals_height: alpha.len() == height };
    Ok((checks, initial_terms))
}

/// Checks property P for `(I, α)` under `order`. The height is computed
/// from an initial ideal; `asserted_height` is used instead when that
/// computation exceeds the budget, and a disagreement between the two is
/// noted.
pub fn property_p_check(
    ideal: &IdealHandle,
    alpha: &[Polynomial],
    order: &TermOrderSpec,
    asserted_height: Option<usize>,
    session: &Session,
) -> Result<PropertyPCertificate> {
    let ring = ideal.ring();
    if alpha.iter().any(|a| a.ring() != ring) {
        return Err(Error::RingMismatch("alpha lives in another ring".into()));
    }
    if order.nvars() != ring.nvars() {
        return Err(Error::InvalidOrder(format!(
            "order on {} variables for a ring with {}",
            order.nvars(),
            ring.nvars()
        )));
    }
    let mut notes = vec![UNMIXED_NOTE.to_string()];
    let (height, height_source) = match (ideal.height(session), asserted_height) {
        (Ok(h), Some(a)) if h != a => {
            notes.push(format!("computed height {h} differs from asserted height {a}"));
            (h, HeightSource::Computed)
        }
        (Ok(h), _) => (h, HeightSource::Computed),
        (Err(Error::BudgetExceeded(why)), Some(a)) => {
            notes.push(format!("height not computed ({why})"));
            (a, HeightSource::Asserted)
        }
        (Err(e), _) => return Err(e),
    };
    let certified = CertifiedIdeal::Generators(ideal.clone());
    let (checks, initial_terms) = run_checks(&certified, alpha, order, height, session)?;
    Ok(PropertyPCertificate {
        ideal: certified,
        order: order.clone(),
        alpha: alpha.to_vec(),
        initial_terms,
        checks,
        height,
        height_source,
        notes,
    })
}

/// Which extension to propagate a certificate through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagationMode {
    /// The generic link built from the ideal's generators, α first.
    Link,
    /// The generic residual intersection `RI(s; α)`; needs `I = (α)`.
    Ri { s: usize },
}

/// A certificate over `R[Y]` plus the layout that produced it.
#[derive(Clone, Debug)]
pub struct Propagation {
    pub certificate: PropertyPCertificate,
    pub layout: YLayout,
    pub mode: LiftMode,
}

fn verify_lead(beta: &Polynomial, order: &TermOrderSpec, expected: &Monomial, label: &str) -> Result<Monomial> {
    let got = beta.leading_monomial(order)?;
    if &got != expected {
        let names = beta.ring().variables();
        return Err(Error::Verification(format!(
            "initial term of {label} is {} but {} was expected",
            crate::algebra::poly::format_monomial(&got, names),
            crate::algebra::poly::format_monomial(expected, names),
        )));
    }
    Ok(got)
}

fn var_monomial(ring: &Ring, name: &str) -> Result<Monomial> {
    let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable { name: name.into(), position: 0 })?;
    Ok(Monomial::variable(ring.nvars(), i))
}

/// Lifts a valid certificate to the generic link or residual
/// intersection, checking the predicted initial terms of the new
/// α-sequence under the lifted order.
pub fn propagate_property_p(
    cert: &PropertyPCertificate,
    mode: PropagationMode,
    session: &Session,
) -> Result<Propagation> {
    if !cert.is_valid() {
        return Err(Error::Precondition("the certificate is not valid".into()));
    }
    let ring = cert.ring().clone();
    let g = cert.alpha.len();
    let leads: Vec<Monomial> = cert.initial_terms.iter().flatten().cloned().collect();
    match mode {
        PropagationMode::Link => {
            let mut gens = cert.alpha.clone();
            for f in cert.ideal.generators(session)? {
                if !gens.contains(&f) {
                    gens.push(f);
                }
            }
            let n = gens.len();
            let layout = YLayout::fresh(&ring, g, n);
            let extended = layout.extend(&ring)?;
            let lift = LiftMode::Link { g, n };
            let order = lifted_order(&cert.order, &layout, lift, &extended)?;
            let lifted = gens.iter().map(|f| f.promote(&extended)).collect::<Result<Vec<_>>>()?;
            let beta = layout.matrix(&extended)?.mul_vector(&lifted)?;
            for (i, b) in beta.iter().enumerate() {
                let expected =
                    var_monomial(&extended, &layout.names[i][i])?.mul(&leads[i].pad(extended.nvars() - ring.nvars()));
                verify_lead(b, &order, &expected, &format!("beta_{}", i + 1))?;
            }
            let numerator = IdealHandle::new(&extended, beta.clone())?;
            let denominator = IdealHandle::new(&extended, lifted)?;
            let ideal = CertifiedIdeal::Colon { numerator, denominator };
            let certificate = finish(ideal, order, beta, g, cert, session)?;
            Ok(Propagation { certificate, layout, mode: lift })
        }
        PropagationMode::Ri { s } => {
            if s < g {
                return Err(Error::InvalidArgument(format!("s = {s} is smaller than |alpha| = {g}")));
            }
            let is_ci = match &cert.ideal {
                CertifiedIdeal::Generators(i) => {
                    let a = IdealHandle::new(&ring, cert.alpha.clone())?;
                    a.contains(i, session)?
                }
                CertifiedIdeal::Colon { .. } => false,
            };
            if !is_ci {
                return Err(Error::Precondition("residual intersections need I = (alpha)".into()));
            }
            let layout = YLayout::fresh(&ring, s, g);
            let extended = layout.extend(&ring)?;
            let lift = LiftMode::Ri { g, s };
            let order = lifted_order(&cert.order, &layout, lift, &extended)?;
            let extra = extended.nvars() - ring.nvars();
            let lifted = cert.alpha.iter().map(|f| f.promote(&extended)).collect::<Result<Vec<_>>>()?;
            let y = layout.matrix(&extended)?;
            let m = y.mul_vector(&lifted)?;
            let mut beta = Vec::with_capacity(s);
            for i in 0..g - 1 {
                let expected = var_monomial(&extended, &layout.names[i][i + 1])?.mul(&leads[i + 1].pad(extra));
                verify_lead(&m[i], &order, &expected, &format!("M_{}", i + 1))?;
                beta.push(m[i].clone());
            }
            let cols: Vec<usize> = (0..g).collect();
            for i in 0..=s - g {
                let rows: Vec<usize> = (i..i + g).collect();
                let minor = y.determinant(Some((&rows, &cols)))?;
                let mut expected = Monomial::one(extended.nvars());
                for (k, &r) in rows.iter().enumerate() {
                    expected = expected.mul(&var_monomial(&extended, &layout.names[r][k])?);
                }
                verify_lead(&minor, &order, &expected, &format!("the minor on rows {}..{}", i + 1, i + g))?;
                beta.push(minor);
            }
            let mut gens = m;
            gens.extend(maximal_minors(&y)?);
            let ideal = CertifiedIdeal::Generators(IdealHandle::new(&extended, gens)?);
            let certificate = finish(ideal, order, beta, s, cert, session)?;
            Ok(Propagation { certificate, layout, mode: lift })
        }
    }
}

fn finish(
    ideal: CertifiedIdeal,
    order: TermOrderSpec,
    alpha: Vec<Polynomial>,
    height: usize,
    parent: &PropertyPCertificate,
    session: &Session,
) -> Result<PropertyPCertificate> {
    let (checks, initial_terms) = run_checks(&ideal, &alpha, &order, height, session)?;
    let mut notes = vec![UNMIXED_NOTE.to_string()];
    if parent.height_source == HeightSource::Asserted {
        notes.push("the base height was asserted".into());
    }
    Ok(PropertyPCertificate {
        ideal,
        order,
        alpha,
        initial_terms,
        checks,
        height,
        height_source: HeightSource::Propagated,
        notes,
    })
}

/// `f = α_1⋯α_g` and its initial term.
#[derive(Clone, Debug)]
pub struct KvWitness {
    pub product: Polynomial,
    pub initial_term: Monomial,
    /// `in(f)` is squarefree, so the initial ideal of `I` is squarefree.
    pub witness_squarefree: bool,
}

pub fn koley_varbaro_witness(cert: &PropertyPCertificate) -> Result<KvWitness> {
    if !cert.is_valid() {
        return Err(Error::Precondition("the certificate is not valid".into()));
    }
    let ring = cert.ring();
    let product = cert.alpha.iter().try_fold(Polynomial::one(ring), |acc, a| acc.checked_mul(a))?;
    let initial_term = product.leading_monomial(&cert.order)?;
    let predicted = cert.initial_terms.iter().flatten().fold(Monomial::one(ring.nvars()), |acc, m| acc.mul(m));
    if initial_term != predicted {
        return Err(Error::Verification("initial term of the product is not the product of initial terms".into()));
    }
    let witness_squarefree = initial_term.is_squarefree();
    Ok(KvWitness { product, initial_term, witness_squarefree })
}

/// The F-pure threshold forced by a valid certificate in characteristic
/// `p`: the witnesses give `ν(p^e) ≥ g(p^e − 1)`, so the threshold is at
/// least `g(1 − p^-e)` for every `e`, and at most the height `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedFpt {
    pub value: BigRational,
    /// `(e, g(p^e − 1)/p^e)` for `e = 1..=e_max`.
    pub lower_bounds: Vec<(u32, BigRational)>,
    pub upper: BigRational,
}

pub fn certified_fpt(cert: &PropertyPCertificate, p: u64, e_max: u32) -> Result<CertifiedFpt> {
    if !cert.is_valid() {
        return Err(Error::Precondition("the certificate is not valid".into()));
    }
    if cert.ring().characteristic() != p || p == 0 {
        return Err(Error::Characteristic { ring: cert.ring().characteristic(), requested: p });
    }
    let mut lower_bounds = Vec::new();
    for e in 1..=e_max {
        let nu = nu_witness_fast(&cert.alpha, &cert.order, p, e)?;
        lower_bounds.push((e, BigRational::new(BigInt::from(nu), BigInt::from(p).pow(e))));
    }
    let upper = BigRational::from_integer(BigInt::from(cert.height));
    Ok(CertifiedFpt { value: upper.clone(), lower_bounds, upper })
}

/// Degree data of an ideal generated in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AInvariantInput {
    /// Number of variables.
    pub n: i64,
    /// Common degree of the generators.
    pub d: i64,
    /// Height.
    pub g: i64,
}

/// `a(S/L) = d(g − 1) − n` for the universal link `L`.
pub fn a_invariant_universal_link(input: AInvariantInput) -> Result<i64> {
    let AInvariantInput { n, d, g } = input;
    if n <= 0 || d <= 0 || g <= 0 || g > n {
        return Err(Error::InvalidArgument(format!("need n, d, g positive with g <= n, got {input:?}")));
    }
    Ok(d * (g - 1) - n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ideal, RingSpec};
    use crate::families::{build_matrix, minors_ideal, pfaffian_ideal, MatrixSpec};

    fn names(m: &Monomial, ring: &Ring) -> String {
        crate::algebra::poly::format_monomial(m, ring.variables())
    }

    #[test]
    fn minors_certificate_and_propagation() {
        let s = Session::default();
        let f = minors_ideal(&build_matrix(MatrixSpec::Generic { m: 2, n: 3 }, 2).unwrap(), 2).unwrap();
        let cert = property_p_check(&f.ideal, &f.alpha(), &f.order().unwrap(), None, &s).unwrap();
        assert!(cert.is_valid(), "{:?}", cert.checks);
        assert_eq!(cert.height_source, HeightSource::Computed);
        let up = propagate_property_p(&cert, PropagationMode::Link, &s).unwrap();
        let e = up.certificate.ring().clone();
        let lead = up.certificate.initial_terms[0].clone().unwrap();
        assert_eq!(names(&lead, &e), "x1_1*x2_2*Y1_1");
        assert!(up.certificate.is_valid());
        assert!(up.certificate.recheck(&s).unwrap().all());
        let kv = koley_varbaro_witness(&cert).unwrap();
        assert!(kv.witness_squarefree);
        assert_eq!(names(&kv.initial_term, f.ring()), "x1_1*x1_2*x2_2*x2_3");
    }

    #[test]
    fn pfaffian_certificate() {
        let s = Session::default();
        let f = pfaffian_ideal(&build_matrix(MatrixSpec::Alternating { k: 5 }, 3).unwrap()).unwrap();
        let cert = property_p_check(&f.ideal, &f.alpha(), &f.order().unwrap(), f.expected_height, &s).unwrap();
        assert!(cert.is_valid());
        let leads: Vec<String> = cert.initial_terms.iter().map(|m| names(m.as_ref().unwrap(), f.ring())).collect();
        assert_eq!(leads, ["x1_4*x2_3", "x1_5*x2_4", "x2_5*x3_4"]);
    }

    #[test]
    fn ri_propagation_of_two_variables() {
        let s = Session::default();
        let r = RingSpec::new(&["x", "y"], 2).unwrap();
        let i = IdealHandle::new(&r, parse_ideal("x, y", &r).unwrap()).unwrap();
        let cert = property_p_check(&i, i.generators(), &TermOrderSpec::lex_natural(2), None, &s).unwrap();
        let up = propagate_property_p(&cert, PropagationMode::Ri { s: 3 }, &s).unwrap();
        let e = up.certificate.ring().clone();
        let leads: Vec<String> = up.certificate.initial_terms.iter().map(|m| names(m.as_ref().unwrap(), &e)).collect();
        assert_eq!(leads, ["y*Y1_2", "Y1_1*Y2_2", "Y2_1*Y3_2"]);
        assert_eq!(up.certificate.alpha.len(), 3);
        assert!(up.certificate.is_valid());
        let fpt = certified_fpt(&up.certificate, 2, 3).unwrap();
        assert_eq!(fpt.value, BigRational::from_integer(3.into()));
        assert!(fpt.lower_bounds.iter().all(|(_, b)| b < &fpt.upper));
    }

    #[test]
    fn invalid_certificates() {
        let s = Session::default();
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let i = IdealHandle::new(&r, parse_ideal("x^2, y", &r).unwrap()).unwrap();
        let cert = property_p_check(&i, i.generators(), &TermOrderSpec::lex_natural(2), None, &s).unwrap();
        assert!(!cert.checks.squarefree && cert.checks.membership && cert.checks.count_equals_height);
        assert!(koley_varbaro_witness(&cert).is_err());
        let j = IdealHandle::new(&r, parse_ideal("x*y, x^2", &r).unwrap()).unwrap();
        let alpha = parse_ideal("x*y", &r).unwrap();
        let cert = property_p_check(&j, &alpha, &TermOrderSpec::lex_natural(2), None, &s).unwrap();
        assert!(cert.checks.squarefree && cert.checks.coprime && cert.checks.count_equals_height);
        let shared = parse_ideal("x*y, x^2 + x*y", &r).unwrap();
        let cert = property_p_check(&j, &shared, &TermOrderSpec::lex_natural(2), None, &s).unwrap();
        assert!(!cert.is_valid());
        assert!(matches!(propagate_property_p(&cert, PropagationMode::Link, &s), Err(Error::Precondition(_))));
    }

    #[test]
    fn a_invariants() {
        let a = |n, d, g| a_invariant_universal_link(AInvariantInput { n, d, g });
        assert_eq!(a(21, 2, 12).unwrap(), 1);
        // Hankel 2x6: n + t - 1 variables, degree t, height n - t + 1
        assert_eq!(a(7, 2, 5).unwrap(), 1);
        assert_eq!(a(1, 1, 1).unwrap(), -1);
        assert!(a(2, 1, 3).is_err());
    }
}
