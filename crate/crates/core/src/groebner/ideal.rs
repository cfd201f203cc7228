use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::{BlockKind, Monomial, OrderKind, Polynomial, Ring, RingSpec, TermOrderSpec};
use crate::error::{Error, Result};

use super::basis::GroebnerBasis;
use super::monomial_ideal::{DimHeight, MonomialIdeal};
use super::session::Session;

struct Inner {
    ring: Ring,
    generators: Vec<Polynomial>,
    cache: RwLock<HashMap<String, Arc<GroebnerBasis>>>,
}

/// An ideal given by generators, with reduced Gröbner bases cached per term
/// order. Cloning is cheap and clones share the cache.
#[derive(Clone)]
pub struct IdealHandle(Arc<Inner>);

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.generators.iter().map(|g| g.to_string())).finish()
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.0.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl IdealHandle {
    /// Drops zero generators and exact duplicates, keeping first occurrences.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch("generator from another ring".into()));
            }
            if !g.is_zero() && seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        Ok(IdealHandle(Arc::new(Inner { ring: ring.clone(), generators: gens, cache: RwLock::new(HashMap::new()) })))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.0.generators
    }

    pub fn is_zero(&self) -> bool {
        self.0.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.0.generators.iter().all(|g| g.is_monomial())
    }

    /// Cached reduced Gröbner basis under `order`.
    pub fn groebner(&self, order: &TermOrderSpec, session: &Session) -> Result<Arc<GroebnerBasis>> {
        let key = order.digest();
        if let Some(gb) = self.0.cache.read().expect("cache lock").get(&key) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.0.ring, &self.0.generators, order, session)?);
        let mut slot = self.0.cache.write().expect("cache lock");
        Ok(slot.entry(key).or_insert(gb).clone())
    }

    /// Basis under the ring's default degrevlex order.
    pub fn default_groebner(&self, session: &Session) -> Result<Arc<GroebnerBasis>> {
        self.groebner(&self.0.ring.default_order(), session)
    }

    fn check_same_ring(&self, other: &IdealHandle) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch("ideals live in different rings".into()));
        }
        Ok(())
    }

    pub fn contains_polynomial(&self, f: &Polynomial, session: &Session) -> Result<bool> {
        if f.ring() != self.ring() {
            return Err(Error::RingMismatch("polynomial from another ring".into()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        self.default_groebner(session)?.contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &IdealHandle, session: &Session) -> Result<bool> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Ok(true);
        }
        let gb = self.default_groebner(session)?;
        for g in other.generators() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by mutual containment.
    pub fn equals(&self, other: &IdealHandle, session: &Session) -> Result<bool> {
        Ok(self.contains(other, session)? && other.contains(self, session)?)
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        let gens = self.generators().iter().chain(other.generators()).cloned().collect();
        IdealHandle::new(self.ring(), gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        let mut gens = Vec::new();
        for a in self.generators() {
            for b in other.generators() {
                gens.push(a * b);
            }
        }
        IdealHandle::new(self.ring(), gens)
    }

    /// `I^r` generated by the r-fold products of generators.
    pub fn power(&self, r: u32) -> Result<IdealHandle> {
        if r == 0 {
            return Err(Error::InvalidArgument("ideal power with exponent 0".into()));
        }
        let mut acc = self.clone();
        for _ in 1..r {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I^[q] = (g^q : g a generator)`.
    pub fn bracket_power(&self, q: u32) -> Result<IdealHandle> {
        if q == 0 {
            return Err(Error::InvalidArgument("bracket power with exponent 0".into()));
        }
        IdealHandle::new(self.ring(), self.generators().iter().map(|g| g.pow(q)).collect())
    }

    pub fn promote(&self, target: &Ring) -> Result<IdealHandle> {
        let gens = self.generators().iter().map(|g| g.promote(target)).collect::<Result<Vec<_>>>()?;
        IdealHandle::new(target, gens)
    }

    pub fn initial_ideal(&self, order: &TermOrderSpec, session: &Session) -> Result<MonomialIdeal> {
        Ok(self.groebner(order, session)?.initial_ideal())
    }

    /// Dimension and height read off the initial ideal under `order`.
    pub fn dimension_and_height(&self, order: &TermOrderSpec, session: &Session) -> Result<DimHeight> {
        let ini = self.initial_ideal(order, session)?;
        if ini.is_unit() {
            return Err(Error::Precondition("the unit ideal has no height".into()));
        }
        ini.dimension_and_height()
    }

    pub fn height(&self, session: &Session) -> Result<usize> {
        Ok(self.dimension_and_height(&self.ring().default_order(), session)?.height)
    }

    /// `I ∩ J` by eliminating a tag `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &IdealHandle, session: &Session) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return IdealHandle::new(self.ring(), vec![]);
        }
        let ring = self.ring();
        let tag = fresh_name(ring, "T");
        let big = RingSpec::extend(ring, &[tag])?;
        let n = ring.nvars();
        let t = Polynomial::var(&big, n);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for f in self.generators() {
            gens.push(&t * &f.promote(&big)?);
        }
        for g in other.generators() {
            gens.push(&one_minus_t * &g.promote(&big)?);
        }
        let mut ranking = vec![n];
        ranking.extend(ring.default_order().ranking().iter().copied());
        let order = TermOrderSpec::new(
            OrderKind::Product { split: 1, head: BlockKind::DegRevLex, tail: BlockKind::DegRevLex },
            ranking,
        )?;
        let gb = GroebnerBasis::compute(&big, &gens, &order, session)?;
        let kept = gb
            .elements()
            .iter()
            .filter(|e| e.terms().iter().all(|(m, _)| m.exponents()[n] == 0))
            .map(|e| drop_last_variable(e, ring))
            .collect();
        IdealHandle::new(ring, kept)?.minimalized(session)
    }

    /// `I : f = (I ∩ (f)) / f`.
    pub fn colon_polynomial(&self, f: &Polynomial, session: &Session) -> Result<IdealHandle> {
        if f.ring() != self.ring() {
            return Err(Error::RingMismatch("polynomial from another ring".into()));
        }
        if f.is_zero() {
            return Err(Error::InvalidArgument("colon by the zero polynomial".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = IdealHandle::new(self.ring(), vec![f.clone()])?;
        let meet = self.intersect(&principal, session)?;
        let quotients = meet.generators().iter().map(|g| g.divide_exact(f)).collect::<Result<Vec<_>>>()?;
        IdealHandle::new(self.ring(), quotients)
    }

    /// `I : J = ⋂_j (I : f_j)` over the generators of `J`.
    pub fn colon(&self, other: &IdealHandle, session: &Session) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Err(Error::InvalidArgument("colon by the zero ideal".into()));
        }
        let mut acc: Option<IdealHandle> = None;
        for f in other.generators() {
            let q = self.colon_polynomial(f, session)?;
            if q.default_groebner(session)?.is_unit() {
                continue;
            }
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, session)?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => IdealHandle::new(self.ring(), vec![Polynomial::one(self.ring())]),
        }
    }

    /// A smaller generating set. For homogeneous ideals the result is a
    /// minimal generating set; otherwise generators are only deduplicated.
    pub fn minimalized(&self, session: &Session) -> Result<IdealHandle> {
        if !self.is_homogeneous() {
            return Ok(self.clone());
        }
        let order = self.ring().default_order();
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in self.generators() {
            gens.push(g.monic(&order)?);
        }
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.terms().len().cmp(&b.terms().len())));
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut gb: Option<GroebnerBasis> = None;
        for g in gens {
            let redundant = match &gb {
                Some(b) => b.contains(&g)?,
                None => false,
            };
            if !redundant {
                kept.push(g);
                gb = Some(GroebnerBasis::compute(self.ring(), &kept, &order, session)?);
            }
        }
        IdealHandle::new(self.ring(), kept)
    }
}

/// `base`, or `base` followed by the first index that avoids the ring's names.
pub(crate) fn fresh_name(ring: &Ring, base: &str) -> String {
    if ring.index_of(base).is_none() {
        return base.to_string();
    }
    (0..).map(|i| format!("{base}{i}")).find(|n| ring.index_of(n).is_none()).expect("unbounded search")
}

fn drop_last_variable(f: &Polynomial, target: &Ring) -> Polynomial {
    let n = target.nvars();
    let terms = f.terms().iter().map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())).collect();
    Polynomial::from_terms(target, terms)
}
