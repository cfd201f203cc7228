use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Comparison rule used inside one block of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Lex,
    DegRevLex,
}

/// The shape of a term order; the variable ranking lives in [`TermOrderSpec`].
///
/// `Product` compares the first `split` ranked variables with `head` and
/// breaks ties on the remaining ones with `tail`. It covers elimination
/// orders (a tag block ahead of the ring) and lex-over-degrevlex lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum OrderKind {
    Lex,
    DegRevLex,
    Product { split: usize, head: BlockKind, tail: BlockKind },
}

/// A term order: a kind plus a ranking of the ring's variables from greatest
/// to least. `ranking[0]` is the index of the greatest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrderSpec {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl TermOrderSpec {
    pub fn new(kind: OrderKind, ranking: Vec<usize>) -> Result<Self> {
        let n = ranking.len();
        let mut seen = vec![false; n];
        for &v in &ranking {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder(format!("ranking {ranking:?} is not a permutation of 0..{n}")));
            }
            seen[v] = true;
        }
        if let OrderKind::Product { split, .. } = kind {
            if split > n {
                return Err(Error::InvalidOrder(format!("block split {split} exceeds {n} variables")));
            }
        }
        Ok(TermOrderSpec { kind, ranking })
    }

    pub fn lex(ranking: Vec<usize>) -> Result<Self> {
        Self::new(OrderKind::Lex, ranking)
    }

    pub fn degrevlex(ranking: Vec<usize>) -> Result<Self> {
        Self::new(OrderKind::DegRevLex, ranking)
    }

    /// Lex with the declared variable order `x_0 > x_1 > ...`.
    pub fn lex_natural(nvars: usize) -> Self {
        TermOrderSpec { kind: OrderKind::Lex, ranking: (0..nvars).collect() }
    }

    pub fn degrevlex_natural(nvars: usize) -> Self {
        TermOrderSpec { kind: OrderKind::DegRevLex, ranking: (0..nvars).collect() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    /// Position of each variable in the ranking (0 = greatest).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.ranking.len()];
        for (p, &v) in self.ranking.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// Same kind, same ranking, degree-reverse-lexicographic instead.
    pub fn with_kind(&self, kind: OrderKind) -> Self {
        TermOrderSpec { kind, ranking: self.ranking.clone() }
    }

    /// Stable textual key, used by caches.
    pub fn digest(&self) -> String {
        let r: Vec<String> = self.ranking.iter().map(|v| v.to_string()).collect();
        format!("{}:{}", self.kind_name(), r.join(","))
    }

    pub fn kind_name(&self) -> String {
        fn block(b: BlockKind) -> &'static str {
            match b {
                BlockKind::Lex => "lex",
                BlockKind::DegRevLex => "degrevlex",
            }
        }
        match self.kind {
            OrderKind::Lex => "lex".into(),
            OrderKind::DegRevLex => "degrevlex".into(),
            OrderKind::Product { split, head, tail } => {
                format!("product({split};{},{})", block(head), block(tail))
            }
        }
    }

    /// Checked comparison of two monomials.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let n = self.ranking.len();
        for m in [a, b] {
            if m.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.nvars() });
            }
        }
        Ok(self.cmp_unchecked(a.exponents(), b.exponents()))
    }

    pub(crate) fn cmp_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        let r = &self.ranking;
        match self.kind {
            OrderKind::Lex => cmp_block(BlockKind::Lex, r, a, b),
            OrderKind::DegRevLex => cmp_block(BlockKind::DegRevLex, r, a, b),
            OrderKind::Product { split, head, tail } => {
                cmp_block(head, &r[..split], a, b).then_with(|| cmp_block(tail, &r[split..], a, b))
            }
        }
    }
}

fn cmp_block(kind: BlockKind, ranking: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        BlockKind::Lex => {
            for &v in ranking {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        }
        BlockKind::DegRevLex => {
            let da: u64 = ranking.iter().map(|&v| a[v] as u64).sum();
            let db: u64 = ranking.iter().map(|&v| b[v] as u64).sum();
            if da != db {
                return da.cmp(&db);
            }
            for &v in ranking.iter().rev() {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    // smaller exponent in the least variable wins
                    other => return other.reverse(),
                }
            }
            Ordering::Equal
        }
    }
}

impl fmt::Display for TermOrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digest())
    }
}
