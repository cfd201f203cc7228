//! Buchberger's algorithm on a bare term representation.
//!
//! Pairs are pruned with the Gebauer-Möller criteria and selected by the
//! normal strategy with sugar: smallest sugar degree first, ties broken by
//! the smaller lcm and then by indices, so a run is fully deterministic.

use std::cmp::Ordering;

use crate::algebra::{Coefficient, Field, Monomial, Polynomial, Ring, TermOrderSpec};
use crate::error::{Error, Result};

use super::session::Session;

pub(crate) type Exps = Vec<u32>;

#[derive(Clone, Debug)]
pub(crate) struct EPoly {
    /// Terms sorted decreasingly under the engine's order.
    pub terms: Vec<(Exps, Coefficient)>,
    pub sugar: u64,
}

impl EPoly {
    fn lead(&self) -> &Exps {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    sugar: u64,
}

fn degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) struct Engine<'a> {
    order: &'a TermOrderSpec,
    field: Field,
    session: &'a Session,
    steps: u64,
}

impl<'a> Engine<'a> {
    pub fn new(order: &'a TermOrderSpec, field: Field, session: &'a Session) -> Self {
        Engine { order, field, session, steps: 0 }
    }

    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.cmp_unchecked(a, b)
    }

    pub fn import(&self, p: &Polynomial) -> EPoly {
        let mut terms: Vec<(Exps, Coefficient)> =
            p.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(e, _)| degree(e)).max().unwrap_or(0);
        EPoly { terms, sugar }
    }

    pub fn export(&self, p: &EPoly, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, p.terms.iter().map(|(e, c)| (Monomial::new(e.clone()), c.clone())).collect())
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.session.budget().max_reductions {
            return Err(Error::BudgetExceeded(format!(
                "more than {} reduction steps",
                self.session.budget().max_reductions
            )));
        }
        if self.steps.is_multiple_of(512) {
            self.session.check_deadline()?;
        }
        Ok(())
    }

    fn make_monic(&self, p: &mut EPoly) {
        let inv = self.field.inv(&p.terms[0].1);
        if self.field.is_one(&inv) {
            return;
        }
        for t in p.terms.iter_mut() {
            t.1 = self.field.mul(&t.1, &inv);
        }
    }

    /// Full reduction of `p` by the (monic) reducers.
    pub fn reduce(&mut self, p: &EPoly, reducers: &[&EPoly]) -> Result<EPoly> {
        let field = self.field;
        // ascending, so the largest term is popped first
        let mut work: Vec<(Exps, Coefficient)> = p.terms.iter().rev().cloned().collect();
        let mut rem: Vec<(Exps, Coefficient)> = Vec::new();
        let mut sugar = p.sugar;
        while let Some((m, c)) = work.pop() {
            let Some(g) = reducers.iter().find(|g| divides(g.lead(), &m)) else {
                rem.push((m, c));
                continue;
            };
            self.tick()?;
            let q: Exps = m.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
            sugar = sugar.max(g.sugar + degree(&q));
            let tail: Vec<(Exps, Coefficient)> = g.terms[1..]
                .iter()
                .rev()
                .map(|(e, a)| (e.iter().zip(&q).map(|(x, y)| x + y).collect(), field.mul(a, &c)))
                .collect();
            work = self.merge_sub_ascending(work, tail);
        }
        Ok(EPoly { terms: rem, sugar })
    }

    /// `a - b` for two ascending term lists.
    fn merge_sub_ascending(
        &self,
        a: Vec<(Exps, Coefficient)>,
        b: Vec<(Exps, Coefficient)>,
    ) -> Vec<(Exps, Coefficient)> {
        let field = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b.into_iter().peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (Some(x), Some(y)) => self.cmp(&x.0, &y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(ia.next().expect("peeked")),
                Ordering::Greater => {
                    let (e, c) = ib.next().expect("peeked");
                    out.push((e, field.neg(&c)));
                }
                Ordering::Equal => {
                    let (e, c) = ia.next().expect("peeked");
                    let (_, d) = ib.next().expect("peeked");
                    let s = field.sub(&c, &d);
                    if !field.is_zero(&s) {
                        out.push((e, s));
                    }
                }
            }
        }
        out
    }

    fn spoly(&self, f: &EPoly, g: &EPoly, l: &[u32]) -> EPoly {
        let field = self.field;
        let shift = |p: &EPoly| -> Vec<(Exps, Coefficient)> {
            let q: Exps = l.iter().zip(p.lead()).map(|(a, b)| a - b).collect();
            p.terms[1..]
                .iter()
                .rev()
                .map(|(e, c)| (e.iter().zip(&q).map(|(x, y)| x + y).collect(), c.clone()))
                .collect()
        };
        // both monic: S = (l/lf) f - (l/lg) g, leading terms cancel
        let a = shift(f);
        let b = shift(g);
        let mut terms = self.merge_sub_ascending(a, b);
        terms.reverse();
        let sugar = (f.sugar + degree(l) - degree(f.lead())).max(g.sugar + degree(l) - degree(g.lead()));
        let _ = field;
        EPoly { terms, sugar }
    }

    /// Reduced Gröbner basis of the inputs, monic, sorted by increasing
    /// leading monomial.
    pub fn groebner(&mut self, input: Vec<EPoly>) -> Result<Vec<EPoly>> {
        let mut input: Vec<EPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
        input.sort_by(|a, b| self.cmp(a.lead(), b.lead()).then_with(|| a.terms.len().cmp(&b.terms.len())));
        let mut polys: Vec<EPoly> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        for f in input {
            let h = {
                let reducers: Vec<&EPoly> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
                self.reduce(&f, &reducers)?
            };
            if h.is_zero() {
                continue;
            }
            if let Some(unit) = self.accept(h, &mut polys, &mut active, &mut pairs)? {
                return Ok(vec![unit]);
            }
        }

        while !pairs.is_empty() {
            let k = self.select(&pairs);
            let pair = pairs.swap_remove(k);
            let s = self.spoly(&polys[pair.i], &polys[pair.j], &pair.lcm);
            let h = {
                let reducers: Vec<&EPoly> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
                self.reduce(&s, &reducers)?
            };
            if h.is_zero() {
                continue;
            }
            if let Some(unit) = self.accept(h, &mut polys, &mut active, &mut pairs)? {
                return Ok(vec![unit]);
            }
        }

        let mut basis: Vec<EPoly> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        basis.sort_by(|a, b| self.cmp(a.lead(), b.lead()));
        let mut reduced = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let tail = EPoly { terms: basis[i].terms[1..].to_vec(), sugar: basis[i].sugar };
            let others: Vec<&EPoly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
            let r = self.reduce(&tail, &others)?;
            let mut terms = vec![basis[i].terms[0].clone()];
            terms.extend(r.terms);
            reduced.push(EPoly { terms, sugar: basis[i].sugar });
        }
        Ok(reduced)
    }

    fn select(&self, pairs: &[Pair]) -> usize {
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let ord =
                a.sugar.cmp(&b.sugar).then_with(|| self.cmp(&a.lcm, &b.lcm)).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        best
    }

    /// Adds a nonzero remainder to the basis. Returns the unit polynomial
    /// when the ideal turns out to be the whole ring.
    fn accept(
        &mut self,
        mut h: EPoly,
        polys: &mut Vec<EPoly>,
        active: &mut Vec<bool>,
        pairs: &mut Vec<Pair>,
    ) -> Result<Option<EPoly>> {
        self.make_monic(&mut h);
        if degree(h.lead()) == 0 {
            return Ok(Some(EPoly { terms: vec![h.terms[0].clone()], sugar: 0 }));
        }
        let max_deg = h.terms.iter().map(|(e, _)| degree(e)).max().unwrap_or(0);
        if max_deg > self.session.budget().max_degree as u64 {
            return Err(Error::BudgetExceeded(format!(
                "basis element of degree {max_deg} exceeds the limit of {}",
                self.session.budget().max_degree
            )));
        }
        self.session.check_deadline()?;
        let hi = polys.len();
        let lh = h.lead().clone();

        // candidate pairs (g, h) with every active g
        let mut cands: Vec<Pair> = Vec::new();
        for (g, p) in polys.iter().enumerate() {
            if !active[g] {
                continue;
            }
            let l = lcm(p.lead(), &lh);
            let sugar = (p.sugar + degree(&l) - degree(p.lead())).max(h.sugar + degree(&l) - degree(&lh));
            cands.push(Pair { i: g, j: hi, lcm: l, sugar });
        }
        let is_coprime = |p: &Pair, polys: &Vec<EPoly>| coprime(polys[p.i].lead(), &lh);

        // criterion M / F
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p1) = cands.pop() {
            let dominated =
                cands.iter().any(|p2| divides(&p2.lcm, &p1.lcm)) || kept.iter().any(|p2| divides(&p2.lcm, &p1.lcm));
            if is_coprime(&p1, polys) || !dominated {
                kept.push(p1);
            }
        }
        // Buchberger's product criterion
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !is_coprime(p, polys)).collect();

        // criterion B on old pairs
        pairs.retain(|p| {
            !(divides(&lh, &p.lcm) && lcm(polys[p.i].lead(), &lh) != p.lcm && lcm(polys[p.j].lead(), &lh) != p.lcm)
        });
        pairs.extend(new_pairs);

        for (g, p) in polys.iter().enumerate() {
            if active[g] && divides(&lh, p.lead()) {
                active[g] = false;
            }
        }
        polys.push(h);
        active.push(true);
        Ok(None)
    }

    /// Whether every S-polynomial of `basis` reduces to zero.
    pub fn is_groebner(&mut self, basis: &[EPoly]) -> Result<bool> {
        let refs: Vec<&EPoly> = basis.iter().collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let l = lcm(basis[i].lead(), basis[j].lead());
                let s = self.spoly(&basis[i], &basis[j], &l);
                if !self.reduce(&s, &refs)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Monic copies of arbitrary polynomials, for use as reducers.
    pub fn import_monic(&self, p: &Polynomial) -> EPoly {
        let mut e = self.import(p);
        if !e.is_zero() {
            self.make_monic(&mut e);
        }
        e
    }
}
