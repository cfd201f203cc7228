//! Generic, alternating, Hankel and symplectic matrices of indeterminates,
//! their minor, pfaffian and nullcone ideals, and the term orders and
//! α-sequences that go with them.

use serde::Serialize;

use crate::algebra::{PolyMatrix, Polynomial, Ring, RingSpec, TermOrderSpec};
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;

/// The shape of a matrix of indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatrixSpec {
    /// `m × n` with variables `x{i}_{j}`.
    Generic { m: usize, n: usize },
    /// `k × k` alternating with variables `x{i}_{j}` for `i < j`.
    Alternating { k: usize },
    /// `t × n` with entry `(i, j)` equal to `x{i+j-1}`.
    Hankel { t: usize, n: usize },
    /// `2t × n`: rows `1..=t` hold `x{i}_{j}`, and row `t + i`, column
    /// `n - j + 1` holds `w{i}_{j}`.
    Symplectic { t: usize, n: usize },
}

/// A matrix together with the spec it was built from.
#[derive(Clone, Debug)]
pub struct FamilyMatrix {
    pub spec: MatrixSpec,
    pub matrix: PolyMatrix,
}

impl FamilyMatrix {
    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }
}

/// Which family an ideal belongs to, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyKind {
    Minors { spec: MatrixSpec, size: usize },
    Pfaffians { size: usize },
    SymplecticNullcone { t: usize, n: usize },
}

/// A family ideal plus the metadata that comes with it.
#[derive(Clone, Debug)]
pub struct FamilyIdeal {
    pub kind: FamilyKind,
    pub matrix: FamilyMatrix,
    pub ideal: IdealHandle,
    /// Height known in closed form for the family.
    pub expected_height: Option<usize>,
    /// Common degree of the generators.
    pub degree: u32,
    /// Name of the recommended term order, registered on the ring.
    pub order_name: Option<String>,
    /// Positions of the recommended α-sequence among the generators.
    pub alpha_indices: Vec<usize>,
    /// The generators form a Gröbner basis under lex in declared order.
    pub lex_generators_form_basis: bool,
    pub notes: Vec<String>,
}

impl FamilyIdeal {
    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// The recommended term order, if the family has one.
    pub fn order(&self) -> Option<TermOrderSpec> {
        self.order_name.as_ref().and_then(|n| self.ring().order(n).cloned())
    }

    /// The recommended α-sequence.
    pub fn alpha(&self) -> Vec<Polynomial> {
        self.alpha_indices.iter().map(|&i| self.ideal.generators()[i].clone()).collect()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Variable names of a spec, in declared order.
fn variable_names(spec: MatrixSpec) -> Vec<String> {
    match spec {
        MatrixSpec::Generic { m, n } => (1..=m).flat_map(|i| (1..=n).map(move |j| format!("x{i}_{j}"))).collect(),
        MatrixSpec::Alternating { k } => (1..=k).flat_map(|i| (i + 1..=k).map(move |j| format!("x{i}_{j}"))).collect(),
        MatrixSpec::Hankel { t, n } => (1..n + t).map(|k| format!("x{k}")).collect(),
        MatrixSpec::Symplectic { t, n } => {
            let xs = (1..=t).flat_map(|i| (1..=n).map(move |j| format!("x{i}_{j}")));
            let ws = (1..=t).flat_map(|i| (1..=n).map(move |j| format!("w{i}_{j}")));
            xs.chain(ws).collect()
        }
    }
}

fn validate(spec: MatrixSpec) -> Result<()> {
    let ok = match spec {
        MatrixSpec::Generic { m, n } => m >= 1 && n >= 1,
        MatrixSpec::Alternating { k } => k >= 2,
        MatrixSpec::Hankel { t, n } => t >= 1 && n >= 1,
        MatrixSpec::Symplectic { t, n } => t >= 1 && n >= 1,
    };
    if !ok {
        return Err(Error::InvalidArgument(format!("invalid matrix dimensions {spec:?}")));
    }
    Ok(())
}

/// Matrix of indeterminates over a fresh ring with canonical names.
pub fn build_matrix(spec: MatrixSpec, characteristic: u64) -> Result<FamilyMatrix> {
    validate(spec)?;
    let ring = RingSpec::new(&variable_names(spec), characteristic)?;
    Ok(FamilyMatrix { spec, matrix: matrix_over(spec, &ring)? })
}

fn matrix_over(spec: MatrixSpec, ring: &Ring) -> Result<PolyMatrix> {
    let v = |name: String| Polynomial::var_named(ring, &name);
    let matrix = match spec {
        MatrixSpec::Generic { m, n } => {
            let entries = (1..=m)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .map(|(i, j)| v(format!("x{i}_{j}")))
                .collect::<Result<Vec<_>>>()?;
            PolyMatrix::new(ring, m, n, entries)?
        }
        MatrixSpec::Alternating { k } => {
            let mut entries = Vec::with_capacity(k * k);
            for i in 1..=k {
                for j in 1..=k {
                    entries.push(match i.cmp(&j) {
                        std::cmp::Ordering::Less => v(format!("x{i}_{j}"))?,
                        std::cmp::Ordering::Greater => v(format!("x{j}_{i}"))?.neg(),
                        std::cmp::Ordering::Equal => Polynomial::zero(ring),
                    });
                }
            }
            PolyMatrix::new(ring, k, k, entries)?
        }
        MatrixSpec::Hankel { t, n } => {
            let entries = (1..=t)
                .flat_map(|i| (1..=n).map(move |j| i + j - 1))
                .map(|k| v(format!("x{k}")))
                .collect::<Result<Vec<_>>>()?;
            PolyMatrix::new(ring, t, n, entries)?
        }
        MatrixSpec::Symplectic { t, n } => {
            let mut entries = Vec::with_capacity(2 * t * n);
            for i in 1..=t {
                for j in 1..=n {
                    entries.push(v(format!("x{i}_{j}"))?);
                }
            }
            for i in 1..=t {
                for c in 1..=n {
                    entries.push(v(format!("w{i}_{}", n - c + 1))?);
                }
            }
            PolyMatrix::new(ring, 2 * t, n, entries)?
        }
    };
    Ok(matrix)
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ranking of the diagonal order: row-major, `x1_1` greatest.
fn diagonal_ranking(ring: &Ring, m: usize, n: usize) -> Result<Vec<usize>> {
    let names: Vec<String> = (1..=m).flat_map(|i| (1..=n).map(move |j| format!("x{i}_{j}"))).collect();
    ring.ranking_from_names(&names)
}

/// Ranking of the pfaffian order: each row right to left, rows top down.
fn pfaffian_ranking(ring: &Ring, k: usize) -> Result<Vec<usize>> {
    let names: Vec<String> = (1..=k).flat_map(|i| (i + 1..=k).rev().map(move |j| format!("x{i}_{j}"))).collect();
    ring.ranking_from_names(&names)
}

/// Block index of `x{i}_{j}` and `w{i}_{j}` in the symplectic order.
pub fn symplectic_block(i: usize, j: usize, n: usize) -> usize {
    // 2j < n - i + 1 is the first case, j < n - i + 1 the second
    if 2 * j < n + 1 - i {
        2 * j + i - 2
    } else if j + i < n + 1 {
        2 * n - 2 * j - i
    } else {
        0
    }
}

/// Ranking of the symplectic order: higher blocks are greater; inside a
/// block x-variables precede w-variables, each row-major.
fn symplectic_ranking(ring: &Ring, t: usize, n: usize) -> Result<Vec<usize>> {
    let mut keyed = Vec::new();
    for (is_w, prefix) in [(0, "x"), (1, "w")] {
        for i in 1..=t {
            for j in 1..=n {
                keyed.push((std::cmp::Reverse(symplectic_block(i, j, n)), is_w, i, j, format!("{prefix}{i}_{j}")));
            }
        }
    }
    keyed.sort();
    let names: Vec<String> = keyed.into_iter().map(|k| k.4).collect();
    ring.ranking_from_names(&names)
}

/// The family's term order on its ring.
pub fn family_order(kind: FamilyKind, ring: &Ring) -> Result<TermOrderSpec> {
    let mismatch = || Error::InvalidArgument(format!("{kind:?} does not match the ring"));
    match kind {
        FamilyKind::Minors { spec: MatrixSpec::Generic { m, n }, .. } => {
            TermOrderSpec::lex(diagonal_ranking(ring, m, n).map_err(|_| mismatch())?)
        }
        FamilyKind::Minors { spec: MatrixSpec::Hankel { .. }, .. } => Ok(TermOrderSpec::lex_natural(ring.nvars())),
        FamilyKind::Minors { .. } => Err(mismatch()),
        FamilyKind::Pfaffians { size } => TermOrderSpec::lex(pfaffian_ranking(ring, size).map_err(|_| mismatch())?),
        FamilyKind::SymplecticNullcone { t, n } => {
            TermOrderSpec::degrevlex(symplectic_ranking(ring, t, n).map_err(|_| mismatch())?)
        }
    }
}

/// The family's α-sequence, when it has one.
pub fn family_alpha(family: &FamilyIdeal) -> Vec<Polynomial> {
    family.alpha()
}

/// All `t × t` minors, ordered by (rows, columns) lexicographically.
pub fn minors_ideal(matrix: &FamilyMatrix, t: usize) -> Result<FamilyIdeal> {
    let (rows, cols) = matrix.matrix.shape();
    if t == 0 || t > rows.min(cols) {
        return Err(Error::InvalidArgument(format!("minor size {t} out of range for {rows}x{cols}")));
    }
    let kind = FamilyKind::Minors { spec: matrix.spec, size: t };
    let (ring, order_name) = match matrix.spec {
        MatrixSpec::Generic { .. } => {
            let order = family_order(kind, matrix.ring())?;
            (RingSpec::with_order(matrix.ring(), "diagonal", order)?, Some("diagonal".to_string()))
        }
        MatrixSpec::Hankel { .. } => (matrix.ring().clone(), Some("lex".to_string())),
        _ => return Err(Error::InvalidArgument("minors are built from generic or Hankel matrices".into())),
    };
    let fm = FamilyMatrix { spec: matrix.spec, matrix: matrix_over(matrix.spec, &ring)? };
    let row_sets = subsets(rows, t);
    let col_sets = subsets(cols, t);
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for r in &row_sets {
        for c in &col_sets {
            gens.push(fm.matrix.determinant(Some((r, c)))?);
            labels.push((r.clone(), c.clone()));
        }
    }
    let ideal = IdealHandle::new(&ring, gens.clone())?;
    let maximal = t == rows.min(cols);
    let mut notes = Vec::new();
    let mut alpha_indices = Vec::new();
    let mut lex_basis = false;
    let expected_height = match matrix.spec {
        MatrixSpec::Generic { m, n } => {
            let h = (m - t + 1) * (n - t + 1);
            if maximal && m <= n {
                for i in 0..=n - m {
                    let want: Vec<usize> = (i..i + m).collect();
                    let pos = labels.iter().position(|(_, c)| *c == want).expect("adjacent minor present");
                    alpha_indices.push(pos);
                }
            } else if maximal {
                notes.push("more rows than columns: transpose to use the adjacent-column sequence".into());
            } else if t * h > m * n {
                notes.push(format!(
                    "property P impossible: {h} elements with pairwise coprime squarefree initial terms of \
                     degree at least {t} would need {} variables, but the ring has {}",
                    t * h,
                    m * n
                ));
            }
            Some(h)
        }
        MatrixSpec::Hankel { t: ht, n } => {
            lex_basis = maximal;
            if maximal && ht <= n {
                Some(n - ht + 1)
            } else {
                None
            }
        }
        _ => None,
    };
    // keep positions valid after the constructor's deduplication
    if ideal.generators().len() != gens.len() {
        alpha_indices.clear();
        notes.push("repeated minors were removed".into());
    }
    Ok(FamilyIdeal {
        kind,
        matrix: fm,
        ideal,
        expected_height,
        degree: t as u32,
        order_name,
        alpha_indices,
        lex_generators_form_basis: lex_basis,
        notes,
    })
}

/// The `2n + 1` maximal pfaffians of an alternating matrix of odd size
/// `2n + 1`; generator `k` deletes row and column `k + 1`.
pub fn pfaffian_ideal(matrix: &FamilyMatrix) -> Result<FamilyIdeal> {
    let MatrixSpec::Alternating { k } = matrix.spec else {
        return Err(Error::InvalidArgument("pfaffians need an alternating matrix".into()));
    };
    if k % 2 == 0 {
        return Err(Error::InvalidArgument(format!("maximal pfaffians need odd size, got {k}")));
    }
    let kind = FamilyKind::Pfaffians { size: k };
    let order = family_order(kind, matrix.ring())?;
    let ring = RingSpec::with_order(matrix.ring(), "pfaffian", order)?;
    let fm = FamilyMatrix { spec: matrix.spec, matrix: matrix_over(matrix.spec, &ring)? };
    let mut gens = Vec::with_capacity(k);
    for del in 0..k {
        let idx: Vec<usize> = (0..k).filter(|&i| i != del).collect();
        gens.push(fm.matrix.pfaffian(Some(&idx))?);
    }
    let n = (k - 1) / 2;
    let ideal = IdealHandle::new(&ring, gens)?;
    Ok(FamilyIdeal {
        kind,
        matrix: fm,
        ideal,
        expected_height: Some(3),
        degree: n as u32,
        order_name: Some("pfaffian".into()),
        // delete 2n+1, delete n+1, delete 1
        alpha_indices: vec![2 * n, n, 0],
        lex_generators_form_basis: false,
        notes: vec![],
    })
}

/// Dimension of the symplectic nullcone of a `2t × n` matrix.
pub fn symplectic_nullcone_dimension(t: usize, n: usize) -> usize {
    if n <= t + 1 {
        2 * n * t - binomial(n, 2)
    } else {
        n * t + binomial(t + 1, 2)
    }
}

/// Generators `d_{i,j}`, `i < j`, of the symplectic nullcone.
pub fn symplectic_nullcone_ideal(t: usize, n: usize, characteristic: u64) -> Result<FamilyIdeal> {
    let spec = MatrixSpec::Symplectic { t, n };
    let base = build_matrix(spec, characteristic)?;
    let kind = FamilyKind::SymplecticNullcone { t, n };
    let order = family_order(kind, base.ring())?;
    let ring = RingSpec::with_order(base.ring(), "symplectic", order)?;
    let fm = FamilyMatrix { spec, matrix: matrix_over(spec, &ring)? };
    let v = |name: String| Polynomial::var_named(&ring, &name);
    let mut gens = Vec::new();
    let mut alpha_indices = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut d = Polynomial::zero(&ring);
            for k in 1..=t {
                let plus = &v(format!("x{k}_{i}"))? * &v(format!("w{k}_{}", n - j + 1))?;
                let minus = &v(format!("x{k}_{j}"))? * &v(format!("w{k}_{}", n - i + 1))?;
                d = &(&d + &plus) - &minus;
            }
            if j - i <= t {
                alpha_indices.push(gens.len());
            }
            gens.push(d);
        }
    }
    let ideal = IdealHandle::new(&ring, gens)?;
    let height = 2 * n * t - symplectic_nullcone_dimension(t, n);
    Ok(FamilyIdeal {
        kind,
        matrix: fm,
        ideal,
        expected_height: Some(height),
        degree: 2,
        order_name: Some("symplectic".into()),
        alpha_indices,
        lex_generators_form_basis: false,
        notes: vec!["the order is degree reverse lexicographic in the block ranking".into()],
    })
}
