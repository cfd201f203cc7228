use std::collections::HashMap;

use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A rectangular matrix of polynomials over one ring, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Matrix(format!("{} entries do not fill a {rows}x{cols} matrix", entries.len())));
        }
        for e in &entries {
            if e.ring() != ring {
                return Err(Error::RingMismatch("matrix entry from another ring".into()));
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_alternating(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j) == &self.get(j, i).neg()))
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vector(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::Matrix(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Polynomial::zero(&self.ring), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }

    /// Determinant of the submatrix on the given rows and columns (all of
    /// them when `None`), by Laplace expansion with memoization over column
    /// subsets.
    pub fn determinant(&self, subset: Option<(&[usize], &[usize])>) -> Result<Polynomial> {
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let all_cols: Vec<usize> = (0..self.cols).collect();
        let (rows, cols) = subset.unwrap_or((&all_rows, &all_cols));
        if rows.len() != cols.len() {
            return Err(Error::Matrix(format!("{}x{} submatrix is not square", rows.len(), cols.len())));
        }
        self.check_indices(rows, self.rows)?;
        self.check_indices(cols, self.cols)?;
        if cols.len() > 63 {
            return Err(Error::Matrix("determinants limited to 63 columns".into()));
        }
        let mut memo = HashMap::new();
        let full = if cols.is_empty() { 0 } else { (1u64 << cols.len()) - 1 };
        Ok(self.det_rec(rows, cols, full, &mut memo))
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize], mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let r = rows[rows.len() - mask.count_ones() as usize];
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_positive = true;
        for (k, &c) in cols.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let a = self.get(r, c);
            if !a.is_zero() {
                let term = a * &self.det_rec(rows, cols, mask & !(1 << k), memo);
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Pfaffian of the principal submatrix on `subset` (all indices when
    /// `None`), by expansion along the first row. `Pf([[0,a],[-a,0]]) = a`.
    pub fn pfaffian(&self, subset: Option<&[usize]>) -> Result<Polynomial> {
        if !self.is_alternating() {
            return Err(Error::Matrix("pfaffian of a non-alternating matrix".into()));
        }
        let all: Vec<usize> = (0..self.rows).collect();
        let idx = subset.unwrap_or(&all);
        self.check_indices(idx, self.rows)?;
        if idx.len() % 2 == 1 {
            return Err(Error::Matrix(format!("pfaffian of odd size {}", idx.len())));
        }
        if idx.len() > 63 {
            return Err(Error::Matrix("pfaffians limited to 63 indices".into()));
        }
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        let full = if sorted.is_empty() { 0 } else { (1u64 << sorted.len()) - 1 };
        let mut memo = HashMap::new();
        Ok(self.pf_rec(&sorted, full, &mut memo))
    }

    fn pf_rec(&self, idx: &[usize], mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_positive = true;
        for k in 0..idx.len() {
            if rest & (1 << k) == 0 {
                continue;
            }
            let a = self.get(idx[first], idx[k]);
            if !a.is_zero() {
                let term = a * &self.pf_rec(idx, rest & !(1 << k), memo);
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    fn check_indices(&self, idx: &[usize], bound: usize) -> Result<()> {
        let mut seen = vec![false; bound];
        for &i in idx {
            if i >= bound || seen[i] {
                return Err(Error::Matrix(format!("invalid index list {idx:?}")));
            }
            seen[i] = true;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::RingSpec;

    fn alternating(names: &[&str], k: usize, char: u64) -> PolyMatrix {
        let r = RingSpec::new(names, char).unwrap();
        let mut v = 0;
        let mut upper = HashMap::new();
        for i in 0..k {
            for j in i + 1..k {
                upper.insert((i, j), Polynomial::var(&r, v));
                v += 1;
            }
        }
        PolyMatrix::from_fn(&r, k, k, |i, j| {
            if i < j {
                upper[&(i, j)].clone()
            } else if i > j {
                upper[&(j, i)].neg()
            } else {
                Polynomial::zero(&r)
            }
        })
    }

    #[test]
    fn pfaffian_base_case() {
        let a = alternating(&["a"], 2, 0);
        assert_eq!(a.pfaffian(None).unwrap().to_string(), "a");
    }

    #[test]
    fn pfaffian_of_generic_four_by_four() {
        let a = alternating(&["x12", "x13", "x14", "x23", "x24", "x34"], 4, 0);
        assert_eq!(a.pfaffian(None).unwrap().to_string(), "x12*x34 - x13*x24 + x14*x23");
        let det = a.determinant(None).unwrap();
        let pf = a.pfaffian(None).unwrap();
        assert_eq!(&pf * &pf, det);
    }

    #[test]
    fn matrix_errors() {
        let a = alternating(&["x12", "x13", "x23"], 3, 0);
        assert!(a.pfaffian(None).is_err());
        assert!(a.pfaffian(Some(&[0, 2])).is_ok());
        let r = a.ring().clone();
        let m = PolyMatrix::from_fn(&r, 2, 3, |_, _| Polynomial::one(&r));
        assert!(m.determinant(None).is_err());
        assert!(m.pfaffian(None).is_err());
        assert_eq!(m.determinant(Some((&[0, 1], &[0, 2]))).unwrap(), Polynomial::zero(&r));
    }

    #[test]
    fn two_by_two_determinant() {
        let r = RingSpec::new(&["a", "b", "c", "d"], 0).unwrap();
        let m = PolyMatrix::from_fn(&r, 2, 2, |i, j| Polynomial::var(&r, 2 * i + j));
        assert_eq!(m.determinant(None).unwrap().to_string(), "a*d - b*c");
    }
}
