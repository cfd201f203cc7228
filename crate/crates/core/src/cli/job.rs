use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::poly::format_monomial;
use crate::algebra::{parse_ideal, parse_polynomial, Monomial, Polynomial, Ring, RingSpec, TermOrderSpec};
use crate::error::{Error, Result};
use crate::families::{build_matrix, minors_ideal, pfaffian_ideal, symplectic_nullcone_ideal, FamilyIdeal, MatrixSpec};
use crate::fsing::{fedder_fpure, fpt_bounds, monomial_lct, nu, nu_table, splitting_probe, NuTable};
use crate::groebner::{BasisStore, Budget, IdealHandle, Session};
use crate::link::{
    a_invariant_universal_link, ambient_link, double_link_check, generic_link, generic_residual_intersection,
    iterated_generic_link, koley_varbaro_witness, propagate_property_p, property_p_check, AInvariantInput,
    CertifiedIdeal, PropagationMode, PropertyPCertificate, RiMethod, YLayout,
};

use super::{exit, CommandName, JobArgs, JobSpec};

/// The JSON report of a job and its exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub value: Value,
    pub exit_code: i32,
}

impl Report {
    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("reports are plain JSON")
    }

    pub fn result(&self) -> Option<&Value> {
        self.value.get("result").filter(|v| !v.is_null())
    }

    pub fn error(&self) -> Option<&str> {
        self.value.get("error").and_then(Value::as_str)
    }
}

/// A successful computation whose verdict may still be negative.
struct Outcome {
    result: Value,
    verified: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome { result, verified: true }
    }

    fn verdict(result: Value, verified: bool) -> Self {
        Outcome { result, verified }
    }
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => exit::VERIFICATION_FAILED,
        Error::BudgetExceeded(_) => exit::BUDGET_EXCEEDED,
        _ => exit::INPUT_ERROR,
    }
}

fn budget_of(args: &JobArgs) -> Result<Budget> {
    let d = Budget::default();
    let b = Budget {
        max_reductions: args.budget_reductions.unwrap_or(d.max_reductions),
        max_degree: args.budget_degree.unwrap_or(d.max_degree),
        max_variables: args.budget_variables.unwrap_or(d.max_variables),
        time_limit_secs: args.budget_seconds.unwrap_or(d.time_limit_secs),
    };
    if b.max_reductions == 0 || b.max_degree == 0 || b.max_variables == 0 || b.time_limit_secs == 0 {
        return Err(Error::InvalidArgument("budgets must be positive".into()));
    }
    Ok(b)
}

/// Runs a job. Never panics: a panic inside a computation is reported as an
/// input error.
pub fn execute_job(spec: &JobSpec, store: Option<Arc<dyn BasisStore>>) -> Report {
    let job = serde_json::to_value(spec).expect("job specs serialize");
    let budget = budget_of(&spec.args);
    let outcome = match &budget {
        Ok(b) => {
            let mut session = Session::new(b.clone());
            if let Some(store) = store {
                session = session.with_store(store);
            }
            catch_unwind(AssertUnwindSafe(|| dispatch(spec, &session)))
                .unwrap_or_else(|_| Err(Error::InvalidArgument("internal error while processing the job".into())))
        }
        Err(e) => Err(e.clone()),
    };
    let (status, exit_code, result, error) = match outcome {
        Ok(Outcome { result, verified: true }) => ("ok", exit::SUCCESS, result, Value::Null),
        Ok(Outcome { result, verified: false }) => {
            ("verification_failed", exit::VERIFICATION_FAILED, result, Value::Null)
        }
        Err(e) => {
            let code = exit_code_of(&e);
            let status = match code {
                exit::VERIFICATION_FAILED => "verification_failed",
                exit::BUDGET_EXCEEDED => "budget_exceeded",
                _ => "input_error",
            };
            (status, code, Value::Null, Value::String(e.to_string()))
        }
    };
    let budget_json = budget.map_or(Value::Null, |b| serde_json::to_value(b).expect("budgets serialize"));
    let value = json!({
        "job": job,
        "status": status,
        "exit_code": exit_code,
        "result": result,
        "error": error,
        "provenance": {
            "library_version": env!("CARGO_PKG_VERSION"),
            "budget": budget_json,
            "budget_hit": exit_code == exit::BUDGET_EXCEEDED,
        },
    });
    Report { value, exit_code }
}

// ---------- inputs ----------

struct Setting {
    ring: Ring,
    family: Option<FamilyIdeal>,
    ideal: Option<IdealHandle>,
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::InvalidArgument(format!("missing --{flag}")))
}

fn family_of(args: &JobArgs) -> Result<Option<FamilyIdeal>> {
    let Some(name) = &args.family else { return Ok(None) };
    let c = args.characteristic;
    let family = match name.as_str() {
        "minors" => {
            let (m, n) = (need(&args.m, "m")?, need(&args.n, "n")?);
            let fm = build_matrix(MatrixSpec::Generic { m, n }, c)?;
            minors_ideal(&fm, args.t.unwrap_or(m.min(n)))?
        }
        "hankel" => {
            let (t, n) = (need(&args.t, "t")?, need(&args.n, "n")?);
            minors_ideal(&build_matrix(MatrixSpec::Hankel { t, n }, c)?, t)?
        }
        "pfaffian" => pfaffian_ideal(&build_matrix(MatrixSpec::Alternating { k: need(&args.k, "k")? }, c)?)?,
        "symplectic" => symplectic_nullcone_ideal(need(&args.t, "t")?, need(&args.n, "n")?, c)?,
        other => return Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
    };
    Ok(Some(family))
}

fn ideal_text(args: &JobArgs) -> Result<Option<String>> {
    if let Some(text) = &args.ideal {
        return Ok(Some(text.clone()));
    }
    match &args.ideal_file {
        Some(path) => {
            std::fs::read_to_string(path).map(Some).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => Ok(None),
    }
}

fn setting(args: &JobArgs) -> Result<Setting> {
    let family = family_of(args)?;
    let ring = match (&family, &args.vars) {
        (Some(f), _) => f.ring().clone(),
        (None, Some(vars)) => {
            let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            RingSpec::new(&names, args.characteristic)?
        }
        (None, None) => return Err(Error::InvalidArgument("missing --vars or --family".into())),
    };
    let ideal = match ideal_text(args)? {
        Some(text) => Some(IdealHandle::new(&ring, parse_ideal(&text, &ring)?)?),
        None => family.as_ref().map(|f| f.ideal.clone()),
    };
    Ok(Setting { ring, family, ideal })
}

impl Setting {
    fn ideal(&self) -> Result<IdealHandle> {
        self.ideal.clone().ok_or_else(|| Error::InvalidArgument("missing --ideal".into()))
    }

    fn polys(&self, text: &Option<String>, flag: &str) -> Result<Vec<Polynomial>> {
        parse_ideal(&need(text, flag)?, &self.ring)
    }

    fn poly(&self, text: &Option<String>, flag: &str) -> Result<Polynomial> {
        parse_polynomial(&need(text, flag)?, &self.ring)
    }

    /// `--alpha`, else the family's sequence.
    fn alpha(&self, args: &JobArgs) -> Result<Vec<Polynomial>> {
        if args.alpha.is_some() {
            return self.polys(&args.alpha, "alpha");
        }
        match &self.family {
            Some(f) if !f.alpha_indices.is_empty() => Ok(f.alpha()),
            _ => Err(Error::InvalidArgument("missing --alpha".into())),
        }
    }

    /// `--order`, else the family's order, else degrevlex.
    fn order(&self, args: &JobArgs) -> Result<TermOrderSpec> {
        let fallback = self.family.as_ref().and_then(|f| f.order_name.clone());
        match args.order.as_ref().or(fallback.as_ref()) {
            Some(name) => resolve_order(&self.ring, name),
            None => Ok(self.ring.default_order()),
        }
    }

    fn asserted_height(&self, args: &JobArgs) -> Option<usize> {
        args.height.or_else(|| self.family.as_ref().and_then(|f| f.expected_height))
    }

    fn prime(&self, args: &JobArgs) -> u64 {
        args.p.unwrap_or(self.ring.characteristic())
    }
}

fn resolve_order(ring: &Ring, name: &str) -> Result<TermOrderSpec> {
    let n = ring.nvars();
    if let Some((kind, vars)) = name.split_once(':') {
        let names: Vec<&str> = vars.split(',').map(str::trim).collect();
        let ranking = ring.ranking_from_names(&names)?;
        return match kind {
            "lex" => TermOrderSpec::lex(ranking),
            "degrevlex" | "grevlex" => TermOrderSpec::degrevlex(ranking),
            _ => Err(Error::InvalidOrder(format!("unknown order kind `{kind}`"))),
        };
    }
    match name {
        "lex" => Ok(TermOrderSpec::lex_natural(n)),
        "degrevlex" | "grevlex" => Ok(TermOrderSpec::degrevlex_natural(n)),
        _ => ring.order(name).cloned().ok_or_else(|| Error::InvalidOrder(format!("unknown order `{name}`"))),
    }
}

// ---------- JSON ----------

fn polys_json(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())
}

fn monomial_json(m: &Monomial, ring: &Ring) -> Value {
    Value::String(format_monomial(m, ring.variables()))
}

fn rational_json(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn ring_json(ring: &Ring) -> Value {
    json!({ "variables": ring.variables(), "characteristic": ring.characteristic() })
}

fn order_json(order: &TermOrderSpec, ring: &Ring) -> Value {
    let names: Vec<&str> = order.ranking().iter().map(|&i| ring.variables()[i].as_str()).collect();
    json!({ "kind": order.kind_name(), "ranking": names })
}

fn layout_json(layout: &YLayout) -> Value {
    json!({ "rows": layout.rows, "cols": layout.cols, "prefix": layout.prefix, "names": layout.names })
}

fn table_json(table: &NuTable) -> Value {
    json!({
        "prime": table.prime,
        "entries": table.entries.iter().map(|&(e, v)| json!({ "e": e, "nu": v })).collect::<Vec<_>>(),
        "monotone": table.is_monotone(),
        "within_range": table.within_range(),
    })
}

fn certificate_json(cert: &PropertyPCertificate) -> Value {
    let ring = cert.ring();
    let ideal = match &cert.ideal {
        CertifiedIdeal::Generators(i) => json!({ "generators": polys_json(i.generators()) }),
        CertifiedIdeal::Colon { numerator, denominator } => json!({
            "colon": {
                "numerator": polys_json(numerator.generators()),
                "denominator": polys_json(denominator.generators()),
            }
        }),
    };
    let initial: Vec<Value> =
        cert.initial_terms.iter().map(|m| m.as_ref().map_or(Value::Null, |m| monomial_json(m, ring))).collect();
    json!({
        "valid": cert.is_valid(),
        "ring": ring_json(ring),
        "ideal": ideal,
        "order": order_json(&cert.order, ring),
        "alpha": polys_json(&cert.alpha),
        "initial_terms": initial,
        "checks": cert.checks,
        "height": cert.height,
        "height_source": cert.height_source,
        "notes": cert.notes,
    })
}

fn family_json(f: &FamilyIdeal) -> Value {
    let order = f.order_name.as_ref().and_then(|n| resolve_order(f.ring(), n).ok());
    json!({
        "kind": f.kind,
        "ring": ring_json(f.ring()),
        "generators": polys_json(f.ideal.generators()),
        "expected_height": f.expected_height,
        "degree": f.degree,
        "order_name": f.order_name,
        "order": order.map(|o| order_json(&o, f.ring())),
        "alpha_indices": f.alpha_indices,
        "alpha": polys_json(&f.alpha()),
        "lex_generators_form_basis": f.lex_generators_form_basis,
        "notes": f.notes,
    })
}

// ---------- commands ----------

fn dispatch(spec: &JobSpec, session: &Session) -> Result<Outcome> {
    let args = &spec.args;
    use CommandName as C;
    if spec.command == C::AInvariant {
        return a_invariant_job(args);
    }
    let st = setting(args)?;
    match spec.command {
        C::Gb => {
            let order = st.order(args)?;
            let gb = st.ideal()?.groebner(&order, session)?;
            Ok(Outcome::ok(json!({
                "order": order_json(&order, &st.ring),
                "basis": polys_json(gb.elements()),
                "is_unit": gb.is_unit(),
            })))
        }
        C::InitialIdeal => {
            let order = st.order(args)?;
            let ini = st.ideal()?.initial_ideal(&order, session)?;
            let gens: Vec<Value> = ini.generators().iter().map(|m| monomial_json(m, &st.ring)).collect();
            Ok(Outcome::ok(json!({
                "order": order_json(&order, &st.ring),
                "generators": gens,
                "squarefree": ini.is_squarefree(),
            })))
        }
        C::Colon | C::Intersect => {
            let other = IdealHandle::new(&st.ring, st.polys(&args.other, "by")?)?;
            let out = if spec.command == C::Colon {
                st.ideal()?.colon(&other, session)?
            } else {
                st.ideal()?.intersect(&other, session)?
            };
            Ok(Outcome::ok(json!({ "generators": polys_json(out.generators()) })))
        }
        C::Height => {
            let order = st.order(args)?;
            let dh = st.ideal()?.dimension_and_height(&order, session)?;
            Ok(Outcome::ok(json!({ "height": dh.height, "dimension": dh.dim })))
        }
        C::Fedder => {
            let v = fedder_fpure(&st.ideal()?, st.prime(args), session)?;
            Ok(Outcome::ok(json!({
                "prime": v.prime,
                "f_pure": v.f_pure,
                "witness": v.witness.map(|w| w.to_string()),
            })))
        }
        C::Nu => {
            let ideal = st.ideal()?;
            let p = st.prime(args);
            match args.e_max {
                Some(e_max) => Ok(Outcome::ok(json!({ "table": table_json(&nu_table(&ideal, p, e_max, session)?) }))),
                None => {
                    let e = args.e.unwrap_or(1);
                    Ok(Outcome::ok(json!({ "prime": p, "e": e, "nu": nu(&ideal, p, e, session)? })))
                }
            }
        }
        C::FptBounds => {
            let b = fpt_bounds(&st.ideal()?, st.prime(args), args.e_max.unwrap_or(2), session)?;
            Ok(Outcome::ok(json!({
                "lower": rational_json(&b.lower),
                "upper": rational_json(&b.upper),
                "exact": b.is_exact(),
                "table": table_json(&b.table),
            })))
        }
        C::FptMono => {
            let lp = monomial_lct(&st.ideal()?)?;
            Ok(Outcome::ok(json!({
                "lct": rational_json(&lp.value),
                "multipliers": lp.multipliers.iter().map(rational_json).collect::<Vec<_>>(),
                "exponents": lp.exponents,
                "feasible": lp.is_feasible(),
            })))
        }
        C::GenericLink => generic_link_job(&st, args, session),
        C::IterateLink => {
            let chain = iterated_generic_link(&st.ideal()?, args.steps.unwrap_or(1), session)?;
            let steps: Vec<Value> = chain
                .steps
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    json!({
                        "step": k + 1,
                        "layout": layout_json(&s.layout),
                        "variables": s.extended_ring.nvars(),
                        "regular_sequence": polys_json(&s.regular_sequence),
                        "generators": polys_json(s.link.generators()),
                    })
                })
                .collect();
            let height = chain.steps.first().map(|s| s.height);
            Ok(Outcome::ok(json!({ "height": height, "steps": steps })))
        }
        C::ResidualIntersection => {
            let alpha =
                if args.alpha.is_some() { st.polys(&args.alpha, "alpha")? } else { st.ideal()?.generators().to_vec() };
            let method = match (args.method.as_deref(), args.cross_check) {
                (_, true) | (Some("cross-check"), _) => RiMethod::CrossCheck,
                (None, false) | (Some("closed-form"), _) => RiMethod::ClosedForm,
                (Some("colon"), _) => RiMethod::Colon,
                (Some(other), _) => return Err(Error::InvalidArgument(format!("unknown method `{other}`"))),
            };
            let ri = generic_residual_intersection(&alpha, need(&args.s, "s")?, method, session)?;
            let height = match method {
                RiMethod::ClosedForm => None,
                _ => Some(ri.ideal.height(session)?),
            };
            Ok(Outcome::ok(json!({
                "method": format!("{method:?}"),
                "layout": layout_json(&ri.layout),
                "regular_sequence": polys_json(&ri.regular_sequence),
                "generators": polys_json(ri.ideal.generators()),
                "height": height,
            })))
        }
        C::AmbientLink => {
            let ideal = st.ideal()?;
            let link = ambient_link(&ideal, &st.alpha(args)?, &st.order(args)?, session)?;
            Ok(Outcome::ok(json!({ "generators": polys_json(link.generators()), "height": link.height(session)? })))
        }
        C::DoubleLink => {
            let d = double_link_check(&st.ideal()?, &st.alpha(args)?, &st.order(args)?, session)?;
            Ok(Outcome::verdict(
                json!({
                    "link": polys_json(d.link.generators()),
                    "double_link": polys_json(d.double_link.generators()),
                    "holds": d.holds,
                }),
                d.holds,
            ))
        }
        C::PropertyP => {
            let cert = certificate(&st, args, session)?;
            Ok(Outcome::verdict(json!({ "certificate": certificate_json(&cert) }), cert.is_valid()))
        }
        C::PropagateP => {
            let cert = certificate(&st, args, session)?;
            if !cert.is_valid() {
                return Ok(Outcome::verdict(json!({ "base": certificate_json(&cert) }), false));
            }
            let mode = match args.mode.as_deref().unwrap_or("link") {
                "link" => PropagationMode::Link,
                "ri" => PropagationMode::Ri { s: need(&args.s, "s")? },
                other => return Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
            };
            let up = propagate_property_p(&cert, mode, session)?;
            let valid = up.certificate.is_valid();
            Ok(Outcome::verdict(
                json!({
                    "base": certificate_json(&cert),
                    "mode": up.mode,
                    "layout": layout_json(&up.layout),
                    "propagated": certificate_json(&up.certificate),
                }),
                valid,
            ))
        }
        C::KvWitness => {
            let cert = certificate(&st, args, session)?;
            if !cert.is_valid() {
                return Ok(Outcome::verdict(json!({ "certificate": certificate_json(&cert) }), false));
            }
            let w = koley_varbaro_witness(&cert)?;
            let ini_squarefree = match &cert.ideal {
                CertifiedIdeal::Generators(i) => match i.initial_ideal(&cert.order, session) {
                    Ok(ini) => Some(ini.is_squarefree()),
                    Err(Error::BudgetExceeded(_)) => None,
                    Err(e) => return Err(e),
                },
                CertifiedIdeal::Colon { .. } => None,
            };
            Ok(Outcome::ok(json!({
                "product": w.product.to_string(),
                "initial_term": monomial_json(&w.initial_term, cert.ring()),
                "witness_squarefree": w.witness_squarefree,
                "initial_ideal_squarefree": ini_squarefree,
            })))
        }
        C::AInvariant => a_invariant_job(args),
        C::Family => match &st.family {
            Some(f) => Ok(Outcome::ok(family_json(f))),
            None => Err(Error::InvalidArgument("missing --family".into())),
        },
        C::SplittingProbe => {
            let probe = splitting_probe(
                &st.ideal()?,
                &st.poly(&args.c, "c")?,
                &st.poly(&args.probe, "probe")?,
                st.prime(args),
                session,
            )?;
            Ok(Outcome::ok(json!({
                "element": probe.element.to_string(),
                "in_frobenius_colon": probe.in_frobenius_colon,
                "outside_frobenius_power": probe.outside_frobenius_power,
                "holds": probe.holds(),
            })))
        }
    }
}

fn certificate(st: &Setting, args: &JobArgs, session: &Session) -> Result<PropertyPCertificate> {
    property_p_check(&st.ideal()?, &st.alpha(args)?, &st.order(args)?, st.asserted_height(args), session)
}

fn generic_link_job(st: &Setting, args: &JobArgs, session: &Session) -> Result<Outcome> {
    let ideal = st.ideal()?;
    let gens = ideal.generators().to_vec();
    let check = args.cross_check || args.s.is_some();
    if let Some(s) = args.s {
        let g = match args.height {
            Some(g) => g,
            None => ideal.height(session)?,
        };
        if s < g {
            return Err(Error::InvalidArgument(format!("s = {s} is smaller than the height {g}")));
        }
    }
    let link = generic_link(&ideal, &gens, args.height, session)?;
    let mut result = json!({
        "height": link.height,
        "layout": layout_json(&link.layout),
        "ring": ring_json(&link.extended_ring),
        "regular_sequence": polys_json(&link.regular_sequence),
        "generators": polys_json(link.link.generators()),
    });
    if check {
        if gens.len() != link.height {
            return Err(Error::Precondition("the cross-check needs a complete intersection".into()));
        }
        let s = args.s.unwrap_or(link.height);
        let ri = generic_residual_intersection(&gens, s, RiMethod::CrossCheck, session)?;
        if s == link.height && !ri.ideal.equals(&link.link, session)? {
            return Err(Error::Verification("the link differs from the closed form".into()));
        }
        result["cross_check"] = json!({
            "s": s,
            "closed_form": polys_json(ri.ideal.generators()),
            "equal": true,
        });
    }
    Ok(Outcome::ok(result))
}

fn a_invariant_job(args: &JobArgs) -> Result<Outcome> {
    let (input, closed_form) = match args.family.as_deref() {
        Some("hankel") => {
            let (t, n) = (need(&args.t, "t")? as i64, need(&args.n, "n")? as i64);
            if t < 1 || t > n {
                return Err(Error::InvalidArgument("need 1 <= t <= n".into()));
            }
            (AInvariantInput { n: n + t - 1, d: t, g: n - t + 1 }, Some((n - 1) * (t - 1) - t * t))
        }
        Some("minors") => {
            let (m, n) = (need(&args.m, "m")?, need(&args.n, "n")?);
            let t = args.t.unwrap_or(m.min(n));
            if t == 0 || t > m.min(n) {
                return Err(Error::InvalidArgument("minor size out of range".into()));
            }
            let g = (m - t + 1) * (n - t + 1);
            (AInvariantInput { n: (m * n) as i64, d: t as i64, g: g as i64 }, None)
        }
        Some(other) => return Err(Error::InvalidArgument(format!("no a-invariant data for family `{other}`"))),
        None => {
            let input = AInvariantInput {
                n: need(&args.n, "n")? as i64,
                d: need(&args.d, "d")? as i64,
                g: need(&args.g, "g")? as i64,
            };
            (input, None)
        }
    };
    let a = a_invariant_universal_link(input)?;
    if closed_form.is_some_and(|c| c != a) {
        return Err(Error::Verification("the Hankel closed form disagrees with d(g-1)-n".into()));
    }
    Ok(Outcome::ok(json!({
        "n": input.n,
        "d": input.d,
        "g": input.g,
        "a_invariant": a,
        "positive": a > 0,
        "hankel_closed_form": closed_form,
    })))
}
