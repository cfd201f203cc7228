use serde::Serialize;

use crate::algebra::Monomial;
use crate::error::{Error, Result};

/// A monomial ideal kept as its minimal generators, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

/// Krull dimension and height of an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimHeight {
    pub dim: usize,
    pub height: usize,
}

impl MonomialIdeal {
    /// Minimalizes the given monomials to an antichain under divisibility.
    pub fn new(nvars: usize, monomials: Vec<Monomial>) -> Self {
        let mut ms = monomials;
        ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        ms.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in ms {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        minimal.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { nvars, generators: minimal }
    }

    /// `(x_1^q, ..., x_n^q)`.
    pub fn frobenius_power_of_maximal(nvars: usize, q: u32) -> Self {
        MonomialIdeal::new(nvars, (0..nvars).map(|i| Monomial::variable(nvars, i).pow(q)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|m| m.is_squarefree())
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|m| m.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Pairwise lcm construction of the intersection.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                out.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.nvars, out)
    }

    /// Height as the minimum number of variables meeting the support of
    /// every generator, found by branch and bound.
    pub fn height(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::Precondition("the unit ideal has no height".into()));
        }
        if self.nvars > 128 {
            return Err(Error::InvalidArgument("height limited to 128 variables".into()));
        }
        let mut edges: Vec<u128> =
            self.generators.iter().map(|m| m.support().fold(0u128, |acc, v| acc | (1u128 << v))).collect();
        edges.sort_by_key(|e| e.count_ones());
        // a superset of another edge is hit whenever the smaller one is
        let mut reduced: Vec<u128> = Vec::new();
        for e in edges {
            if !reduced.iter().any(|r| r & e == *r) {
                reduced.push(e);
            }
        }
        let mut best = reduced.len().min(self.nvars);
        cover(&reduced, 0, 0, &mut best);
        Ok(best)
    }

    pub fn dimension_and_height(&self) -> Result<DimHeight> {
        let height = self.height()?;
        Ok(DimHeight { dim: self.nvars - height, height })
    }
}

fn cover(edges: &[u128], chosen: u128, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // the unhit edge with the fewest variables gives the narrowest branch
    let unhit = edges.iter().filter(|e| *e & chosen == 0).min_by_key(|e| e.count_ones());
    let Some(&edge) = unhit else {
        *best = size;
        return;
    };
    // every remaining pairwise-disjoint unhit edge needs its own variable
    let mut disjoint = 0;
    let mut used = 0u128;
    for e in edges.iter().filter(|e| *e & chosen == 0) {
        if e & used == 0 {
            used |= e;
            disjoint += 1;
        }
    }
    if size + disjoint >= *best {
        return;
    }
    let mut bits = edge;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        cover(edges, chosen | (1u128 << v), size + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimal_generators() {
        let i = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1]), m(&[3, 1]), m(&[2, 0])]);
        assert_eq!(i.generators(), &[m(&[2, 0]), m(&[1, 1])]);
        assert!(!i.is_squarefree());
    }

    #[test]
    fn heights() {
        // diagonals of the 2x3 minors in x11,x12,x13,x21,x22,x23
        let i = MonomialIdeal::new(6, vec![m(&[1, 0, 0, 0, 1, 0]), m(&[1, 0, 0, 0, 0, 1]), m(&[0, 1, 0, 0, 0, 1])]);
        assert_eq!(i.height().unwrap(), 2);
        let xy = MonomialIdeal::new(3, vec![m(&[1, 0, 0]), m(&[0, 1, 0])]);
        assert_eq!(xy.dimension_and_height().unwrap(), DimHeight { dim: 1, height: 2 });
        assert_eq!(MonomialIdeal::new(3, vec![]).height().unwrap(), 0);
        assert!(MonomialIdeal::new(1, vec![m(&[0])]).height().is_err());
    }

    #[test]
    fn lcm_intersection() {
        let a = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        let b = MonomialIdeal::new(2, vec![m(&[0, 1])]);
        assert_eq!(a.intersect(&b).generators(), &[m(&[1, 1])]);
    }
}
