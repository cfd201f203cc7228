use serde::Serialize;

use crate::algebra::{BlockKind, OrderKind, PolyMatrix, Polynomial, Ring, RingSpec, TermOrderSpec};
use crate::error::{Error, Result};

/// Names of a matrix of fresh indeterminates adjoined to a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YLayout {
    pub rows: usize,
    pub cols: usize,
    pub prefix: String,
    /// `names[i][j]` names the entry in row `i + 1`, column `j + 1`.
    pub names: Vec<Vec<String>>,
}

impl YLayout {
    /// A layout with the first prefix among `Y`, `Yb`, `Yc`, … whose names
    /// avoid every variable of `ring`.
    pub fn fresh(ring: &Ring, rows: usize, cols: usize) -> YLayout {
        let candidates = std::iter::once("Y".to_string()).chain((b'b'..=b'z').map(|c| format!("Y{}", c as char)));
        for prefix in candidates {
            let layout = YLayout::with_prefix(&prefix, rows, cols);
            if layout.flat_names().iter().all(|n| ring.index_of(n).is_none()) {
                return layout;
            }
        }
        // only reachable after 25 nested extensions
        let prefix = format!("Y{}", ring.nvars());
        YLayout::with_prefix(&prefix, rows, cols)
    }

    pub fn with_prefix(prefix: &str, rows: usize, cols: usize) -> YLayout {
        let names = (1..=rows).map(|i| (1..=cols).map(|j| format!("{prefix}{i}_{j}")).collect()).collect();
        YLayout { rows, cols, prefix: prefix.to_string(), names }
    }

    /// Names in row-major order.
    pub fn flat_names(&self) -> Vec<String> {
        self.names.iter().flatten().cloned().collect()
    }

    /// `R[Y]` with the Y-variables appended row-major.
    pub fn extend(&self, ring: &Ring) -> Result<Ring> {
        RingSpec::extend(ring, &self.flat_names())
    }

    /// The matrix `Y` over `ring`, which must contain the layout's names.
    pub fn matrix(&self, ring: &Ring) -> Result<PolyMatrix> {
        let entries = self.flat_names().iter().map(|n| Polynomial::var_named(ring, n)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(ring, self.rows, self.cols, entries)
    }

    fn index(&self, ring: &Ring, i: usize, j: usize) -> Result<usize> {
        ring.index_of(&self.names[i][j])
            .ok_or_else(|| Error::InvalidOrder(format!("`{}` is not a ring variable", self.names[i][j])))
    }
}

/// Which lift of a base order to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum LiftMode {
    /// `g × n` matrix for a generic link: `Y11 > … > Ygg`, then the other
    /// entries row-major.
    Link { g: usize, n: usize },
    /// `s × g` matrix for a residual intersection: rows from the bottom up,
    /// each right to left, except that row `i < g` starts with `Y_{i,i+1}`.
    Ri { g: usize, s: usize },
}

/// Lex in the Y-variables ahead of the base order on the original
/// variables, on the extended ring `extended`.
pub fn lifted_order(base: &TermOrderSpec, layout: &YLayout, mode: LiftMode, extended: &Ring) -> Result<TermOrderSpec> {
    let (want_rows, want_cols) = match mode {
        LiftMode::Link { g, n } => (g, n),
        LiftMode::Ri { g, s } => (s, g),
    };
    if (layout.rows, layout.cols) != (want_rows, want_cols) {
        return Err(Error::InvalidArgument(format!(
            "layout is {}x{} but {mode:?} needs {want_rows}x{want_cols}",
            layout.rows, layout.cols
        )));
    }
    let base_n = base.nvars();
    if extended.nvars() != base_n + layout.rows * layout.cols {
        return Err(Error::InvalidArgument("extended ring does not match the layout".into()));
    }
    let mut y_rank = Vec::with_capacity(layout.rows * layout.cols);
    match mode {
        LiftMode::Link { g, n } => {
            for i in 0..g.min(n) {
                y_rank.push(layout.index(extended, i, i)?);
            }
            for i in 0..g {
                for j in 0..n {
                    if i != j || i >= n {
                        y_rank.push(layout.index(extended, i, j)?);
                    }
                }
            }
        }
        LiftMode::Ri { g, s } => {
            for i in (0..s).rev() {
                let lead = (i + 1 < g).then_some(i + 1);
                if let Some(c) = lead {
                    y_rank.push(layout.index(extended, i, c)?);
                }
                for j in (0..g).rev() {
                    if Some(j) != lead {
                        y_rank.push(layout.index(extended, i, j)?);
                    }
                }
            }
        }
    }
    for &v in &y_rank {
        if v < base_n {
            return Err(Error::InvalidArgument("Y-variables must follow the base variables".into()));
        }
    }
    let ny = y_rank.len();
    let mut ranking = y_rank;
    ranking.extend(base.ranking().iter().copied());
    let kind = match base.kind() {
        OrderKind::Lex => OrderKind::Lex,
        OrderKind::DegRevLex => OrderKind::Product { split: ny, head: BlockKind::Lex, tail: BlockKind::DegRevLex },
        OrderKind::Product { split, head: BlockKind::Lex, tail } => {
            OrderKind::Product { split: ny + split, head: BlockKind::Lex, tail }
        }
        OrderKind::Product { .. } => {
            return Err(Error::InvalidOrder("cannot lift an order whose first block is not lex".into()))
        }
    };
    TermOrderSpec::new(kind, ranking)
}
