use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{squarefree_and_coprime, Monomial, Polynomial, TermOrderSpec};
use crate::error::{Error, Result};
use crate::groebner::{IdealHandle, Session};

use super::fedder::{check_characteristic, prime_power};

/// The values `ν_I(p^e)` for `e = 1..=e_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuTable {
    pub prime: u64,
    pub generator_count: usize,
    /// `(e, ν(p^e))`, increasing in `e`.
    pub entries: Vec<(u32, u64)>,
}

impl NuTable {
    /// `0 ≤ ν(p^e) ≤ N(p^e − 1)` for every row.
    pub fn within_range(&self) -> bool {
        self.entries.iter().all(|&(e, v)| {
            let q = self.prime.pow(e);
            v <= self.generator_count as u64 * (q - 1)
        })
    }

    /// `ν(p^(e+1)) ≥ p·ν(p^e)` for consecutive rows.
    pub fn is_monotone(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].0 + 1 != w[1].0 || w[1].1 >= self.prime * w[0].1)
    }
}

/// Bounds on the F-pure threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptBounds {
    /// `max_e ν(p^e)/p^e` over the table.
    pub lower: BigRational,
    pub upper: BigRational,
    pub table: NuTable,
}

impl FptBounds {
    /// Replaces the upper bound when `bound` is tighter.
    pub fn tighten_upper(&mut self, bound: BigRational) {
        if bound < self.upper && bound >= self.lower {
            self.upper = bound;
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Truncation of `f` modulo `m^[q]`.
fn truncate(f: &Polynomial, q: u64) -> Polynomial {
    let terms = f.terms().iter().filter(|(m, _)| m.all_below(q)).cloned().collect();
    Polynomial::from_terms(f.ring(), terms)
}

/// Product of two truncated polynomials, truncated again.
fn truncated_product(a: &Polynomial, b: &Polynomial, q: u64) -> Polynomial {
    let field = a.field();
    let mut terms = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let e: Vec<u32> = ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| x + y).collect();
            if e.iter().all(|&x| (x as u64) < q) {
                terms.push((Monomial::new(e), field.mul(ca, cb)));
            }
        }
    }
    Polynomial::from_terms(a.ring(), terms)
}

/// Semi-echelon basis of a span of polynomials, pivoting on the leading
/// term in storage order.
struct Echelon {
    rows: HashMap<Monomial, Polynomial>,
    order: Vec<Monomial>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: HashMap::new(), order: Vec::new() }
    }

    fn insert(&mut self, mut v: Polynomial, steps: &mut u64, session: &Session) -> Result<()> {
        let field = v.field();
        while let Some((m, c)) = v.terms().first().cloned() {
            let Some(row) = self.rows.get(&m) else {
                let inv = field.inv(&c);
                let monic = v.scale(&inv);
                self.order.push(m.clone());
                self.rows.insert(m, monic);
                return Ok(());
            };
            *steps += 1;
            if *steps > session.budget().max_reductions {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} elimination steps while computing nu",
                    session.budget().max_reductions
                )));
            }
            if (*steps).is_multiple_of(4096) {
                session.check_deadline()?;
            }
            v = &v - &row.scale(&c);
        }
        Ok(())
    }

    fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn basis(&self) -> impl Iterator<Item = &Polynomial> {
        self.order.iter().map(|m| &self.rows[m])
    }
}

/// `ν_I(p^e) = max { r : I^r ⊄ m^[p^e] }`.
///
/// Works in `R/m^[q]`: the span of the truncated r-fold products of the
/// generators is built from the previous span, and ν is the last `r` for
/// which it is nonzero.
pub fn nu(ideal: &IdealHandle, p: u64, e: u32, session: &Session) -> Result<u64> {
    check_characteristic(ideal.ring(), p)?;
    if e == 0 {
        return Err(Error::InvalidArgument("nu needs e ≥ 1".into()));
    }
    let q = prime_power(p, e)? as u64;
    let gens = ideal.generators();
    if gens.iter().any(|g| g.terms().iter().any(|(m, _)| m.is_one())) {
        return Err(Error::Precondition("nu needs an ideal inside the homogeneous maximal ideal".into()));
    }
    let trunc: Vec<Polynomial> = gens.iter().map(|g| truncate(g, q)).filter(|g| !g.is_zero()).collect();
    let mut steps = 0u64;
    let mut current = Echelon::new();
    for g in &trunc {
        current.insert(g.clone(), &mut steps, session)?;
    }
    let mut r = 0u64;
    while !current.is_empty() {
        r += 1;
        let mut next = Echelon::new();
        for v in current.basis() {
            for g in &trunc {
                let w = truncated_product(v, g, q);
                if !w.is_zero() {
                    next.insert(w, &mut steps, session)?;
                }
            }
        }
        current = next;
    }
    Ok(r)
}

/// `g(p^e − 1)` for `g = |alpha|`, valid when the initial terms of `alpha`
/// are squarefree and pairwise coprime: then the leading term of
/// `(α_1⋯α_g)^(q−1)` has every exponent at most `q − 1`.
pub fn nu_witness_fast(alpha: &[Polynomial], order: &TermOrderSpec, p: u64, e: u32) -> Result<u64> {
    if alpha.is_empty() {
        return Err(Error::Precondition("empty sequence".into()));
    }
    let leads = alpha.iter().map(|a| a.leading_monomial(order)).collect::<Result<Vec<_>>>()?;
    let sc = squarefree_and_coprime(&leads);
    if !(sc.each_squarefree && sc.pairwise_coprime) {
        return Err(Error::Precondition("initial terms are not squarefree and pairwise coprime".into()));
    }
    let q = prime_power(p, e)? as u64;
    Ok(alpha.len() as u64 * (q - 1))
}

/// ν for `e = 1..=e_max`, rows computed on separate threads.
pub fn nu_table(ideal: &IdealHandle, p: u64, e_max: u32, session: &Session) -> Result<NuTable> {
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be positive".into()));
    }
    let rows: Vec<Result<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=e_max).map(|e| scope.spawn(move || nu(ideal, p, e, session))).collect();
        handles.into_iter().map(|h| h.join().expect("nu worker panicked")).collect()
    });
    let mut entries = Vec::with_capacity(rows.len());
    for (e, row) in (1..=e_max).zip(rows) {
        entries.push((e, row?));
    }
    Ok(NuTable { prime: p, generator_count: ideal.generators().len(), entries })
}

/// `[max_e ν(p^e)/p^e, height(I)]`.
pub fn fpt_bounds(ideal: &IdealHandle, p: u64, e_max: u32, session: &Session) -> Result<FptBounds> {
    let table = nu_table(ideal, p, e_max, session)?;
    let lower = table
        .entries
        .iter()
        .map(|&(e, v)| BigRational::new(BigInt::from(v), BigInt::from(p).pow(e)))
        .max()
        .expect("nonempty table");
    let upper = BigRational::from_integer(BigInt::from(ideal.height(session)?));
    Ok(FptBounds { lower, upper, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ideal, RingSpec};

    fn ideal(text: &str, vars: &[&str], p: u64) -> IdealHandle {
        let r = RingSpec::new(vars, p).unwrap();
        IdealHandle::new(&r, parse_ideal(text, &r).unwrap()).unwrap()
    }

    #[test]
    fn nu_of_small_ideals() {
        let s = Session::default();
        assert_eq!(nu(&ideal("x, y", &["x", "y"], 2), 2, 1, &s).unwrap(), 2);
        assert_eq!(nu(&ideal("x^2", &["x"], 3), 3, 1, &s).unwrap(), 1);
        assert!(nu(&ideal("x + 1", &["x"], 3), 3, 1, &s).is_err());
    }

    #[test]
    fn bounds_of_principal_and_maximal() {
        let s = Session::default();
        let b = fpt_bounds(&ideal("x, y", &["x", "y"], 2), 2, 1, &s).unwrap();
        assert_eq!(b.lower, BigRational::from_integer(1.into()));
        assert_eq!(b.upper, BigRational::from_integer(2.into()));
        let b = fpt_bounds(&ideal("x", &["x", "y"], 3), 3, 2, &s).unwrap();
        assert_eq!(b.lower, BigRational::new(8.into(), 9.into()));
        assert_eq!(b.upper, BigRational::from_integer(1.into()));
        assert!(b.table.is_monotone() && b.table.within_range());
    }

    #[test]
    fn fast_witness_requires_coprime_squarefree_leads() {
        let r = RingSpec::new(&["x", "y"], 2).unwrap();
        let lex = TermOrderSpec::lex_natural(2);
        let ok = parse_ideal("x, y", &r).unwrap();
        assert_eq!(nu_witness_fast(&ok, &lex, 2, 2).unwrap(), 6);
        let bad = parse_ideal("x*y, y", &r).unwrap();
        assert!(nu_witness_fast(&bad, &lex, 2, 1).is_err());
    }
}
