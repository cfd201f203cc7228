use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::{Coefficient, Field};
use super::monomial::Monomial;
use super::order::TermOrderSpec;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A sparse polynomial in canonical form: no zero coefficients, no repeated
/// monomials, terms sorted by decreasing lex (declared variable order).
/// Equality is therefore structural.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coefficient)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Coefficient) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    /// The `index`-th ring variable.
    pub fn var(ring: &Ring, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::variable(ring.nvars(), index), ring.field().one())] }
    }

    /// Variable by name.
    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable { name: name.to_string(), position: 0 })?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coefficient) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Coefficient)>) -> Self {
        let field = ring.field();
        let n = ring.nvars();
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial has the wrong number of variables");
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Coefficient)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// A single term (a scalar multiple of a monomial).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "polynomials over [{}] and [{}]",
                self.ring.variables().join(","),
                other.ring.variables().join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let neg = |c: &Coefficient| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), neg(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), neg(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplication by a monomial preserves lex order
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// The greatest term under `order`.
    pub fn leading_term(&self, order: &TermOrderSpec) -> Result<(Coefficient, Monomial)> {
        if order.nvars() != self.ring.nvars() {
            return Err(Error::DimensionMismatch { expected: self.ring.nvars(), found: order.nvars() });
        }
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| order.cmp_unchecked(a.0.exponents(), b.0.exponents()))
            .ok_or(Error::ZeroPolynomial)?;
        Ok((c.clone(), m.clone()))
    }

    pub fn leading_monomial(&self, order: &TermOrderSpec) -> Result<Monomial> {
        self.leading_term(order).map(|(_, m)| m)
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: &TermOrderSpec) -> Result<Polynomial> {
        let (c, _) = self.leading_term(order)?;
        Ok(self.scale(&self.field().inv(&c)))
    }

    /// Rewrites the polynomial in `target`, matching variables by name.
    /// Every variable that occurs must exist in `target`; coefficient fields
    /// must agree.
    pub fn promote(&self, target: &Ring) -> Result<Polynomial> {
        if target.field() != self.ring.field() {
            return Err(Error::RingMismatch("coefficient fields differ".into()));
        }
        if Arc::ptr_eq(target, &self.ring) || **target == *self.ring {
            return Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() });
        }
        let map = variable_map(&self.ring, target, |i| self.terms.iter().any(|(m, _)| m.exponents()[i] > 0))?;
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[map[i].expect("checked above")] = x;
                    }
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact division `self / divisor`; errors when the remainder is nonzero.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = self.field();
        // lex natural is the storage order, so leading terms are terms[0]
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = field.inv(&lc);
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let q = lm
                .quotient_of(&m)
                .ok_or_else(|| Error::InvalidArgument("polynomial division leaves a nonzero remainder".into()))?;
            let qc = field.mul(&c, &lc_inv);
            rest = rest.merge(&divisor.mul_monomial(&q).scale(&qc), true);
            quotient.push((q, qc));
        }
        Ok(Polynomial::from_terms(&self.ring, quotient))
    }

    /// Substitutes polynomials (all in one ring) for the variables.
    pub fn substitute(&self, images: &[Polynomial], target: &Ring) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul_unchecked(&images[i].pow(e));
                }
            }
            acc = acc.merge(&t, false);
        }
        acc
    }
}

/// For each source variable that `used(i)` reports, its index in `target`.
pub(crate) fn variable_map(source: &Ring, target: &Ring, used: impl Fn(usize) -> bool) -> Result<Vec<Option<usize>>> {
    source
        .variables()
        .iter()
        .enumerate()
        .map(|(i, name)| match target.index_of(name) {
            Some(j) => Ok(Some(j)),
            None if used(i) => Err(Error::RingMismatch(format!("variable `{name}` missing from target ring"))),
            None => Ok(None),
        })
        .collect()
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.field();
        let names = self.ring.variables();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if field.is_one(&abs) {
                f.write_str(&format_monomial(m, names))?;
            } else {
                write!(f, "{abs}*{}", format_monomial(m, names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::RingSpec;

    #[test]
    fn difference_of_squares_over_q() {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(&p * &Polynomial::one(&r), p);
    }

    #[test]
    fn freshman_dream_in_char_two() {
        let r = RingSpec::new(&["x", "y"], 2).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert_eq!((&x + &y).pow(2).to_string(), "x^2 + y^2");
        assert_eq!((&x + &y).pow(0), Polynomial::one(&r));
    }

    #[test]
    fn leading_terms() {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &x + &y.pow(2);
        let lex = TermOrderSpec::lex_natural(2);
        assert_eq!(f.leading_monomial(&lex).unwrap(), Monomial::new(vec![1, 0]));
        let drl = TermOrderSpec::degrevlex_natural(2);
        assert_eq!(f.leading_monomial(&drl).unwrap(), Monomial::new(vec![0, 2]));
        assert_eq!(Polynomial::zero(&r).leading_term(&lex), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = RingSpec::new(&["x"], 0).unwrap();
        let s = RingSpec::new(&["y"], 0).unwrap();
        let e = Polynomial::var(&r, 0).checked_add(&Polynomial::var(&s, 0));
        assert!(matches!(e, Err(Error::RingMismatch(_))));
    }

    #[test]
    fn promote_is_the_identity_embedding() {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let s = RingSpec::extend(&r, &["Y1_1", "Y1_2", "Y2_1", "Y2_2"]).unwrap();
        let f = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        let g = f.promote(&s).unwrap();
        assert_eq!(g.ring().nvars(), 6);
        assert_eq!(g.to_string(), "x + y");
        assert_eq!(g.terms()[0].0, Monomial::new(vec![1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn exact_division() {
        let r = RingSpec::new(&["x", "y"], 3).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x + &y) * &(&(&x * &y) - &Polynomial::one(&r));
        assert_eq!(f.divide_exact(&(&x + &y)).unwrap(), &(&x * &y) - &Polynomial::one(&r));
        assert!(x.divide_exact(&y).is_err());
    }
}
