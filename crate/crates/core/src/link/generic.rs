use crate::algebra::{squarefree_and_coprime, PolyMatrix, Polynomial, Ring, TermOrderSpec};
use crate::error::{Error, Result};
use crate::families::subsets;
use crate::groebner::{IdealHandle, Session};

use super::layout::YLayout;

/// A generic link `L(I) = 𝔞R[Y] : IR[Y]` with `𝔞` the entries of `Y·fᵀ`.
#[derive(Clone, Debug)]
pub struct LinkResult {
    pub base_ring: Ring,
    pub extended_ring: Ring,
    pub layout: YLayout,
    /// The generators `f` of `I` used to build `𝔞`, over the extended ring.
    pub generators: Vec<Polynomial>,
    /// Entries of `Y·fᵀ`.
    pub regular_sequence: Vec<Polynomial>,
    pub link: IdealHandle,
    /// Height of `I`, also the number of rows of `Y`.
    pub height: usize,
}

/// A chain `I = L_0, L_1, …, L_k`.
#[derive(Clone, Debug)]
pub struct IteratedLinks {
    pub base: IdealHandle,
    pub steps: Vec<LinkResult>,
}

impl IteratedLinks {
    /// `L_k`, which is `I` itself when no step was taken.
    pub fn last(&self) -> &IdealHandle {
        self.steps.last().map_or(&self.base, |s| &s.link)
    }
}

/// How to compute a residual intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RiMethod {
    ClosedForm,
    Colon,
    CrossCheck,
}

/// A generic residual intersection `RI(s; α)`.
#[derive(Clone, Debug)]
pub struct ResidualIntersection {
    pub extended_ring: Ring,
    pub layout: YLayout,
    pub alpha: Vec<Polynomial>,
    /// Entries of `M = Y·αᵀ`.
    pub regular_sequence: Vec<Polynomial>,
    pub ideal: IdealHandle,
    pub method: RiMethod,
}

/// Outcome of linking twice through the same `(α)`.
#[derive(Clone, Debug)]
pub struct DoubleLink {
    pub link: IdealHandle,
    pub double_link: IdealHandle,
    pub holds: bool,
}

fn same_generators(a: &[Polynomial], b: &[Polynomial]) -> bool {
    a.len() == b.len() && a.iter().all(|f| b.contains(f))
}

fn check_ring(ring: &Ring, polys: &[Polynomial]) -> Result<()> {
    if polys.iter().any(|f| f.ring() != ring) {
        return Err(Error::RingMismatch("polynomial from another ring".into()));
    }
    Ok(())
}

/// `𝔞 : I` over `R[Y]` for a fresh `g × n` matrix `Y`, where `n = |gens|`
/// and `g` is the height of `I` (computed when `height` is `None`).
///
/// `I` is assumed unmixed; that is not checked.
pub fn generic_link(
    ideal: &IdealHandle,
    gens: &[Polynomial],
    height: Option<usize>,
    session: &Session,
) -> Result<LinkResult> {
    let ring = ideal.ring();
    if gens.is_empty() || gens.iter().any(Polynomial::is_zero) {
        return Err(Error::InvalidArgument("generic link needs nonzero generators".into()));
    }
    check_ring(ring, gens)?;
    if !gens.iter().all(Polynomial::is_homogeneous) {
        return Err(Error::Precondition("generic link needs homogeneous generators".into()));
    }
    if !same_generators(gens, ideal.generators()) {
        let given = IdealHandle::new(ring, gens.to_vec())?;
        if !given.equals(ideal, session)? {
            return Err(Error::Precondition("the given generators do not generate the ideal".into()));
        }
    }
    let g = match height {
        Some(g) => g,
        None => ideal.height(session)?,
    };
    if g == 0 {
        return Err(Error::Precondition("generic link of an ideal of height 0".into()));
    }
    if g > gens.len() {
        return Err(Error::Precondition(format!("height {g} exceeds the {} generators", gens.len())));
    }
    let layout = YLayout::fresh(ring, g, gens.len());
    let extended = layout.extend(ring)?;
    session.check_variables(extended.nvars() + 1)?;
    let lifted = gens.iter().map(|f| f.promote(&extended)).collect::<Result<Vec<_>>>()?;
    let y = layout.matrix(&extended)?;
    let regular_sequence = y.mul_vector(&lifted)?;
    let a = IdealHandle::new(&extended, regular_sequence.clone())?;
    let i_ext = IdealHandle::new(&extended, lifted.clone())?;
    let link = a.colon(&i_ext, session)?;
    Ok(LinkResult {
        base_ring: ring.clone(),
        extended_ring: extended,
        layout,
        generators: lifted,
        regular_sequence,
        link,
        height: g,
    })
}

/// `L_1, …, L_steps`, each linked through its own minimal generators. The
/// height is computed once for `I` and carried along, since linkage
/// preserves it.
pub fn iterated_generic_link(ideal: &IdealHandle, steps: usize, session: &Session) -> Result<IteratedLinks> {
    let mut out = IteratedLinks { base: ideal.clone(), steps: Vec::with_capacity(steps) };
    if steps == 0 {
        return Ok(out);
    }
    let g = ideal.height(session)?;
    for _ in 0..steps {
        let current = out.last().clone();
        let step = generic_link(&current, current.generators(), Some(g), session)?;
        out.steps.push(step);
    }
    Ok(out)
}

/// Checks that `alpha` is a regular sequence in `I` of length `height(I)`
/// with `(α) ≠ I`, certified by squarefree pairwise coprime initial terms.
fn check_link_setup(
    ideal: &IdealHandle,
    alpha: &[Polynomial],
    order: &TermOrderSpec,
    session: &Session,
) -> Result<IdealHandle> {
    let ring = ideal.ring();
    if alpha.is_empty() {
        return Err(Error::Precondition("empty sequence".into()));
    }
    check_ring(ring, alpha)?;
    let leads = alpha.iter().map(|a| a.leading_monomial(order)).collect::<Result<Vec<_>>>()?;
    let sc = squarefree_and_coprime(&leads);
    if !(sc.each_squarefree && sc.pairwise_coprime) {
        return Err(Error::Precondition("initial terms of alpha are not squarefree and pairwise coprime".into()));
    }
    let a = IdealHandle::new(ring, alpha.to_vec())?;
    if !ideal.contains(&a, session)? {
        return Err(Error::Precondition("(alpha) is not contained in I".into()));
    }
    let h = ideal.height(session)?;
    if h != alpha.len() {
        return Err(Error::Precondition(format!("|alpha| = {} but height(I) = {h}", alpha.len())));
    }
    if a.contains(ideal, session)? {
        return Err(Error::Precondition("(alpha) = I: I is a complete intersection with no proper link".into()));
    }
    Ok(a)
}

/// `(α) : I` in the ring of `I`.
pub fn ambient_link(
    ideal: &IdealHandle,
    alpha: &[Polynomial],
    order: &TermOrderSpec,
    session: &Session,
) -> Result<IdealHandle> {
    let a = check_link_setup(ideal, alpha, order, session)?;
    a.colon(ideal, session)
}

/// Computes `J = (α) : I` and checks `(α) : J = I`.
pub fn double_link_check(
    ideal: &IdealHandle,
    alpha: &[Polynomial],
    order: &TermOrderSpec,
    session: &Session,
) -> Result<DoubleLink> {
    let a = check_link_setup(ideal, alpha, order, session)?;
    let link = a.colon(ideal, session)?;
    let double_link = a.colon(&link, session)?;
    let holds = double_link.equals(ideal, session)?;
    Ok(DoubleLink { link, double_link, holds })
}

/// The maximal minors of an `s × g` matrix, rows chosen in lex order.
pub(crate) fn maximal_minors(y: &PolyMatrix) -> Result<Vec<Polynomial>> {
    let (s, g) = y.shape();
    let cols: Vec<usize> = (0..g).collect();
    subsets(s, g).iter().map(|rows| y.determinant(Some((rows, &cols)))).collect()
}

/// `RI(s; α)` over `R[Y]` for a fresh `s × g` matrix `Y`: either the
/// closed form `(entries of Y·αᵀ) + I_g(Y)`, the colon `(Y·αᵀ) : (α)`, or
/// both with an equality check.
pub fn generic_residual_intersection(
    alpha: &[Polynomial],
    s: usize,
    method: RiMethod,
    session: &Session,
) -> Result<ResidualIntersection> {
    let Some(first) = alpha.first() else {
        return Err(Error::InvalidArgument("empty sequence".into()));
    };
    let ring = first.ring().clone();
    check_ring(&ring, alpha)?;
    let g = alpha.len();
    if s < g {
        return Err(Error::InvalidArgument(format!("s = {s} is smaller than |alpha| = {g}")));
    }
    let base = IdealHandle::new(&ring, alpha.to_vec())?;
    if base.generators().len() != g || !base.is_homogeneous() {
        return Err(Error::Precondition("alpha must be distinct nonzero homogeneous polynomials".into()));
    }
    if base.height(session)? != g {
        return Err(Error::Precondition("alpha is not a regular sequence".into()));
    }
    let layout = YLayout::fresh(&ring, s, g);
    let extended = layout.extend(&ring)?;
    let lifted = alpha.iter().map(|f| f.promote(&extended)).collect::<Result<Vec<_>>>()?;
    let y = layout.matrix(&extended)?;
    let regular_sequence = y.mul_vector(&lifted)?;

    let closed = || -> Result<IdealHandle> {
        let mut gens = regular_sequence.clone();
        gens.extend(maximal_minors(&y)?);
        IdealHandle::new(&extended, gens)
    };
    let colon = || -> Result<IdealHandle> {
        session.check_variables(extended.nvars() + 1)?;
        let a = IdealHandle::new(&extended, regular_sequence.clone())?;
        a.colon(&IdealHandle::new(&extended, lifted.clone())?, session)
    };
    let ideal = match method {
        RiMethod::ClosedForm => closed()?,
        RiMethod::Colon => colon()?,
        RiMethod::CrossCheck => {
            let c = closed()?;
            if !c.equals(&colon()?, session)? {
                return Err(Error::Verification("closed-form and colon residual intersections differ".into()));
            }
            c
        }
    };
    Ok(ResidualIntersection { extended_ring: extended, layout, alpha: alpha.to_vec(), regular_sequence, ideal, method })
}
