use serde::{Deserialize, Serialize};

/// A monomial as a dense exponent vector, one slot per ring variable.
///
/// The derived `Ord` compares exponent vectors lexicographically, which is
/// lex with the declared variable order. Polynomials use it as their
/// canonical storage order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// True when every exponent is strictly below `q`, i.e. the monomial is
    /// not in the Frobenius power `m^[q]` of the maximal homogeneous ideal.
    pub fn all_below(&self, q: u64) -> bool {
        self.0.iter().all(|&e| (e as u64) < q)
    }

    /// Embeds into a ring with `extra` additional trailing variables.
    pub fn pad(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }
}

/// Result of the squarefree / coprimality test on a list of monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarefreeCoprime {
    pub each_squarefree: bool,
    pub pairwise_coprime: bool,
}

/// Tests whether each monomial is squarefree and whether their supports are
/// pairwise disjoint.
pub fn squarefree_and_coprime(ms: &[Monomial]) -> SquarefreeCoprime {
    let each_squarefree = ms.iter().all(Monomial::is_squarefree);
    let pairwise_coprime = ms.iter().enumerate().all(|(i, a)| ms[i + 1..].iter().all(|b| a.is_coprime(b)));
    SquarefreeCoprime { each_squarefree, pairwise_coprime }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn squarefree_coprime_examples() {
        // x11*x22, x12*x23 in the 2x3 generic ring (x11,x12,x13,x21,x22,x23)
        let a = m(&[1, 0, 0, 0, 1, 0]);
        let b = m(&[0, 1, 0, 0, 0, 1]);
        assert_eq!(
            squarefree_and_coprime(&[a, b]),
            SquarefreeCoprime { each_squarefree: true, pairwise_coprime: true }
        );
        assert_eq!(
            squarefree_and_coprime(&[m(&[2, 0]), m(&[0, 1])]),
            SquarefreeCoprime { each_squarefree: false, pairwise_coprime: true }
        );
        assert_eq!(
            squarefree_and_coprime(&[m(&[1, 1, 0]), m(&[0, 1, 1])]),
            SquarefreeCoprime { each_squarefree: true, pairwise_coprime: false }
        );
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 2]).all_below(3));
        assert!(!m(&[1, 3]).all_below(3));
    }
}
