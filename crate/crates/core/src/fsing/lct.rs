use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;

/// The linear program `max Σ μ_j` subject to `μ ≥ 0` and
/// `Σ μ_j a_j ≤ (1, …, 1)`, whose optimum is the log canonical threshold of
/// the monomial ideal generated by the `x^(a_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonLP {
    pub exponents: Vec<Vec<u32>>,
    pub value: BigRational,
    pub multipliers: Vec<BigRational>,
}

impl NewtonLP {
    /// Re-checks feasibility of the multipliers and their sum.
    pub fn is_feasible(&self) -> bool {
        if self.multipliers.iter().any(|m| m.is_negative()) {
            return false;
        }
        let nvars = self.exponents.first().map_or(0, |a| a.len());
        let one = BigRational::one();
        let within = (0..nvars).all(|i| {
            let s: BigRational = self
                .exponents
                .iter()
                .zip(&self.multipliers)
                .map(|(a, m)| m * BigRational::from_integer(BigInt::from(a[i])))
                .sum();
            s <= one
        });
        let total: BigRational = self.multipliers.iter().sum();
        within && total == self.value
    }
}

/// Exact log canonical threshold of a monomial ideal.
pub fn monomial_lct(ideal: &IdealHandle) -> Result<NewtonLP> {
    if ideal.is_zero() {
        return Err(Error::InvalidArgument("the zero ideal has no threshold".into()));
    }
    let mut exponents = Vec::new();
    for g in ideal.generators() {
        if !g.is_monomial() {
            return Err(Error::Precondition(format!("`{g}` is not a monomial")));
        }
        let m = &g.terms()[0].0;
        if m.is_one() {
            return Err(Error::Precondition("the unit ideal has no threshold".into()));
        }
        exponents.push(m.exponents().to_vec());
    }
    let (value, multipliers) = simplex_max_sum(&exponents);
    Ok(NewtonLP { exponents, value, multipliers })
}

/// Bland's-rule simplex for `max 1·μ, Aμ ≤ 1, μ ≥ 0`, with the columns of
/// `A` given as `columns`. Every column is nonzero so the program is bounded.
fn simplex_max_sum(columns: &[Vec<u32>]) -> (BigRational, Vec<BigRational>) {
    let m = columns.len();
    let n = columns[0].len();
    let width = m + n + 1;
    let rat = |v: u32| BigRational::from_integer(BigInt::from(v));
    // rows: constraints; last column: right-hand side
    let mut t: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = vec![BigRational::zero(); width];
            for (j, col) in columns.iter().enumerate() {
                row[j] = rat(col[i]);
            }
            row[m + i] = BigRational::one();
            row[width - 1] = BigRational::one();
            row
        })
        .collect();
    let mut z = vec![BigRational::zero(); width];
    for zj in z.iter_mut().take(m) {
        *zj = -BigRational::one();
    }
    let mut basis: Vec<usize> = (m..m + n).collect();

    while let Some(enter) = (0..width - 1).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("bounded program");
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        let f = z[enter].clone();
        for (x, p) in z.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }

    let mut mu = vec![BigRational::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            mu[b] = t[i][width - 1].clone();
        }
    }
    (z[width - 1].clone(), mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ideal, RingSpec};

    fn lct(text: &str, vars: &[&str]) -> NewtonLP {
        let r = RingSpec::new(vars, 0).unwrap();
        monomial_lct(&IdealHandle::new(&r, parse_ideal(text, &r).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn known_thresholds() {
        let lp = lct("x1^2*x2, x3^3", &["x1", "x2", "x3"]);
        assert_eq!(lp.value, BigRational::new(5.into(), 6.into()));
        assert!(lp.is_feasible());
        assert_eq!(lct("x^5", &["x"]).value, BigRational::new(1.into(), 5.into()));
        assert_eq!(lct("a, b, c", &["a", "b", "c"]).value, BigRational::from_integer(3.into()));
    }

    #[test]
    fn rejects_non_monomial_and_unit() {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let i = IdealHandle::new(&r, parse_ideal("x + y", &r).unwrap()).unwrap();
        assert!(monomial_lct(&i).is_err());
        let u = IdealHandle::new(&r, parse_ideal("1", &r).unwrap()).unwrap();
        assert!(monomial_lct(&u).is_err());
        assert!(monomial_lct(&IdealHandle::new(&r, vec![]).unwrap()).is_err());
    }
}
