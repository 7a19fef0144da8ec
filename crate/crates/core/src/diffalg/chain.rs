//! Relation chains generated by the orthogonality condition, and the
//! grading arithmetic behind them.

use std::fmt;

use super::{dot, ProductContext};
use crate::bicomplex::cohomology::{columns, flatten};
use crate::bicomplex::{CheckReport, Cochain, Evaluator, Grade, Tag};
use crate::diffalg::residual_report;
use crate::error::Result;
use crate::scalar::{fmt_q, sign, Q};
use crate::voa::Vector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationStatus {
    Verified,
    Failed(String),
    Unverifiable(String),
}

impl fmt::Display for RelationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationStatus::Verified => write!(f, "verified"),
            RelationStatus::Failed(w) => write!(f, "FAILED: {w}"),
            RelationStatus::Unverifiable(w) => write!(f, "unverifiable: {w}"),
        }
    }
}

/// One identity `lhs == rhs` in a bidegree.
#[derive(Debug, Clone)]
pub struct Relation {
    pub lhs: String,
    pub rhs: String,
    pub tag: Option<Tag>,
    pub status: RelationStatus,
}

impl Relation {
    /// Builds the relation `lhs == rhs` and checks it by evaluating the
    /// residual `residual` on the probe grid.
    pub fn check(ev: &Evaluator, lhs: &str, rhs: &str, residual: Result<Cochain>, probe: u32) -> Relation {
        match residual {
            Ok(res) => {
                let rep = residual_report(ev, lhs, &res, probe);
                Relation { lhs: lhs.into(), rhs: rhs.into(), tag: Some(res.tag()), status: status_of(&rep) }
            }
            Err(e) => Relation::unverifiable(lhs, rhs, e.to_string()),
        }
    }

    pub fn unverifiable(lhs: &str, rhs: &str, why: String) -> Relation {
        Relation { lhs: lhs.into(), rhs: rhs.into(), tag: None, status: RelationStatus::Unverifiable(why) }
    }
}

fn status_of(rep: &CheckReport) -> RelationStatus {
    match &rep.failure {
        None => RelationStatus::Verified,
        Some(w) => RelationStatus::Failed(w.clone()),
    }
}

/// An unknown cochain solved for by exact elimination over an ansatz of
/// generator cochains.
#[derive(Debug, Clone)]
pub struct SolvedUnknown {
    pub name: String,
    pub tag: Tag,
    /// Pivot-ordered solution; `None` when the system is inconsistent.
    pub value: Option<Cochain>,
    pub coefficients: Vec<(Vector, Q)>,
    /// Dimension of the solution space within the ansatz.
    pub solution_dim: usize,
}

#[derive(Debug, Clone)]
pub struct RelationChain {
    pub premise: Relation,
    pub relations: Vec<Relation>,
    pub index_equations: Vec<String>,
    pub unknowns: Vec<SolvedUnknown>,
    /// Named generators: `H*`, `H`, `X+1`, `Y+1`, `X-i`, `Y-i`.
    pub registry: Vec<(String, Cochain)>,
    pub stop_reason: String,
}

impl RelationChain {
    pub fn generator(&self, name: &str) -> Option<&Cochain> {
        self.registry.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// One line per relation: `id|status|witness`.
    pub fn machine_lines(&self) -> Vec<String> {
        std::iter::once(&self.premise)
            .chain(&self.relations)
            .enumerate()
            .map(|(i, r)| {
                let (st, w) = match &r.status {
                    RelationStatus::Verified => ("pass", String::new()),
                    RelationStatus::Failed(w) => ("fail", w.clone()),
                    RelationStatus::Unverifiable(w) => ("unverifiable", w.clone()),
                };
                format!("relation.{i}|{st}|{} == {} {w}", r.lhs, r.rhs)
            })
            .collect()
    }
}

impl fmt::Display for RelationChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in std::iter::once(&self.premise).chain(&self.relations) {
            let tag = r.tag.map(|t| t.to_string()).unwrap_or_else(|| "?".into());
            writeln!(f, "{} == {}  [{tag}]  {}", r.lhs, r.rhs, r.status)?;
        }
        for e in &self.index_equations {
            writeln!(f, "{e}")?;
        }
        for u in &self.unknowns {
            match &u.value {
                Some(_) => {
                    let terms: Vec<String> =
                        u.coefficients.iter().map(|(w, c)| format!("{} Phi[{w}]", fmt_q(c))).collect();
                    let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    writeln!(f, "{} = {body} in {} (solution space dim {})", u.name, u.tag, u.solution_dim)?;
                }
                None => writeln!(f, "{} in {}: no solution in the ansatz, kept formal", u.name, u.tag)?,
            }
        }
        writeln!(f, "chain stops: {}", self.stop_reason)
    }
}

/// Parameters of the chain construction.
#[derive(Debug, Clone)]
pub struct ChainConfig {
    pub ctx: ProductContext,
    pub max_steps: usize,
    pub probe: u32,
    /// Anchors of the generator ansatz for each unknown have weight at
    /// most this bound.
    pub ansatz_weight: u32,
}

/// Solves `lhs_fn(α) = target` for `α` in the span of generator cochains
/// with tag `tag`, exactly on the probe grid.
pub(crate) fn solve_unknown(
    ev: &Evaluator,
    name: &str,
    tag: Tag,
    target: &Cochain,
    product: &dyn Fn(&Cochain) -> Result<Cochain>,
    cfg: &ChainConfig,
) -> Result<SolvedUnknown> {
    let anchors: Vec<Vector> = ev.va().basis_up_to(cfg.ansatz_weight).into_iter().map(Vector::basis).collect();
    let ansatz: Vec<Cochain> = anchors.iter().map(|w| Cochain::generator(w.clone(), tag.n, tag.m)).collect();
    let mut family: Vec<Cochain> = ansatz.iter().map(product).collect::<Result<_>>()?;
    family.push(target.clone());
    let mut vecs = flatten(ev, &family, target.arity(), cfg.probe)?;
    let b = vecs.pop().unwrap();
    let a = columns(&vecs);
    let solved = if b.is_empty() { Some((vec![Q::from_integer(0.into()); ansatz.len()], ansatz.len())) } else { a.solve(&b) };
    Ok(match solved {
        Some((x, dim)) => {
            let coefficients: Vec<(Vector, Q)> =
                anchors.iter().cloned().zip(x).filter(|(_, c)| !num_traits::Zero::is_zero(c)).collect();
            let value = if coefficients.is_empty() {
                Cochain::zero(tag.n, tag.m)
            } else {
                Cochain::linear(
                    coefficients.iter().map(|(w, c)| (c.clone(), Cochain::generator(w.clone(), tag.n, tag.m))).collect(),
                )?
            };
            SolvedUnknown { name: name.into(), tag, value: Some(value), coefficients, solution_dim: dim }
        }
        None => SolvedUnknown { name: name.into(), tag, value: None, coefficients: Vec::new(), solution_dim: 0 },
    })
}

fn index(x: i64) -> Option<usize> {
    usize::try_from(x).ok()
}

fn whole(m: Grade) -> i64 {
    match m {
        Grade::Whole(k) => k as i64,
        Grade::Half => 0,
    }
}

/// Builds the chain of relations implied by `Φ · δχ = 0`:
/// `δχ = Φ·α_1`, `0 = δΦ·α_1 + (-1)^n Φ·δα_1`, `0 = δΦ·δχ`,
/// `δχ = δΦ·α_2`, then `0 = δΦ·δα_i` and `δα_i = δΦ·α_{i+1}` for `i >= 2`,
/// solving each `α_i` over a generator ansatz. The chain stops when the
/// bidegree of the next unknown would be negative, an unknown has no
/// solution, or `max_steps` unknowns have been introduced.
pub fn orthogonality_chain(ev: &Evaluator, chi: &Cochain, phi: &Cochain, cfg: &ChainConfig) -> Result<RelationChain> {
    let ctx = &cfg.ctx;
    let r = ctx.r() as i64;
    let t = ctx.t as i64;
    let (n0, m0) = (chi.arity() as i64, whole(chi.tag().m));
    let (n, m) = (phi.arity() as i64, whole(phi.tag().m));
    let d_chi = chi.delta()?;
    let d_phi = phi.delta()?;
    let probe = cfg.probe;
    let mut registry = vec![
        ("H*".to_string(), chi.clone()),
        ("H".to_string(), d_chi.clone()),
        ("X+1".to_string(), phi.clone()),
        ("Y+1".to_string(), d_phi.clone()),
    ];
    let premise = Relation::check(ev, "Phi.dchi", "0", dot(phi, &d_chi, ctx), probe);
    let mut relations = Vec::new();
    let mut index_equations = vec![
        format!("n0+1 = n+n1-r: {} = {} + n1 - {}", n0 + 1, n, r),
        format!("m0-1 = m+m1-t: {} = {} + m1 - {}", m0 - 1, m, t),
    ];
    let mut unknowns = Vec::new();
    let stop_reason;

    // α_1 from δχ = Φ·α_1
    let (n1, m1) = (n0 + 1 - n + r, m0 - 1 - m + t);
    index_equations.push(format!("n1 = {n1}, m1 = {m1}"));
    let (Some(n1u), Some(m1u)) = (index(n1), index(m1)) else {
        let reason = format!("negative bidegree (n1, m1) = ({n1}, {m1})");
        return Ok(RelationChain { premise, relations, index_equations, unknowns, registry, stop_reason: reason });
    };
    let a1 = match solve_unknown(ev, "alpha1", Tag::whole(n1u, m1u as u32), &d_chi, &|a| dot(phi, a, ctx), cfg) {
        Ok(a) => a,
        Err(e) => {
            relations.push(Relation::unverifiable("dchi", "Phi.alpha1", e.to_string()));
            let stop_reason = format!("alpha1: {e}");
            return Ok(RelationChain { premise, relations, index_equations, unknowns, registry, stop_reason });
        }
    };
    unknowns.push(a1.clone());
    let Some(alpha1) = a1.value else {
        relations.push(Relation::unverifiable("dchi", "Phi.alpha1", "alpha1 has no solution".into()));
        return Ok(RelationChain {
            premise,
            relations,
            index_equations,
            unknowns,
            registry,
            stop_reason: "alpha1 unsolvable".into(),
        });
    };
    registry.push(("X-1".into(), alpha1.clone()));
    relations.push(Relation::check(ev, "dchi", "Phi.alpha1", dot(phi, &alpha1, ctx).and_then(|p| d_chi.sub(&p)), probe));
    let d_alpha1 = alpha1.delta();
    if let Ok(d) = &d_alpha1 {
        registry.push(("Y-1".into(), d.clone()));
    }
    relations.push(Relation::check(
        ev,
        "0",
        &format!("dPhi.alpha1 + ({})Phi.dalpha1", if n % 2 == 0 { "+1" } else { "-1" }),
        d_alpha1.and_then(|da| {
            let fit = ctx.fitted(&[(d_phi.tag(), alpha1.tag()), (phi.tag(), da.tag())]);
            Cochain::linear(vec![(sign(0), dot(&d_phi, &alpha1, &fit)?), (sign(n), dot(phi, &da, &fit)?)])
        }),
        probe,
    ));
    let fit = ctx.fitted(&[(d_phi.tag(), d_chi.tag())]);
    relations.push(Relation::check(ev, "0", "dPhi.dchi", dot(&d_phi, &d_chi, &fit), probe));

    // α_2 from δχ = δΦ·α_2, then δα_i = δΦ·α_{i+1}
    let mut target = d_chi.clone();
    let mut target_name = "dchi".to_string();
    let (mut ni, mut mi) = (n0 - n + r, m0 - m + t);
    let mut step = 2;
    loop {
        if step > cfg.max_steps {
            stop_reason = format!("max_steps = {} reached", cfg.max_steps);
            break;
        }
        index_equations.push(format!("n{} = {ni}, m{} = {mi}", step, step));
        let (Some(nu), Some(mu)) = (index(ni), index(mi)) else {
            stop_reason = format!("negative bidegree (n{step}, m{step}) = ({ni}, {mi})");
            break;
        };
        let name = format!("alpha{step}");
        let sol = match solve_unknown(ev, &name, Tag::whole(nu, mu as u32), &target, &|a| dot(&d_phi, a, ctx), cfg) {
            Ok(s) => s,
            Err(e) => {
                relations.push(Relation::unverifiable(&target_name, &format!("dPhi.{name}"), e.to_string()));
                stop_reason = format!("{name}: {e}");
                break;
            }
        };
        unknowns.push(sol.clone());
        let Some(alpha) = sol.value else {
            relations.push(Relation::unverifiable(&target_name, &format!("dPhi.{name}"), format!("{name} has no solution")));
            stop_reason = format!("{name} unsolvable");
            break;
        };
        registry.push((format!("X-{step}"), alpha.clone()));
        relations.push(Relation::check(
            ev,
            &target_name,
            &format!("dPhi.{name}"),
            dot(&d_phi, &alpha, ctx).and_then(|p| target.sub(&p)),
            probe,
        ));
        let Ok(d_alpha) = alpha.delta() else {
            stop_reason = format!("δ undefined on {name} in {}", alpha.tag());
            break;
        };
        registry.push((format!("Y-{step}"), d_alpha.clone()));
        let fit = ctx.fitted(&[(d_phi.tag(), d_alpha.tag())]);
        relations.push(Relation::check(ev, "0", &format!("dPhi.d{name}"), dot(&d_phi, &d_alpha, &fit), probe));
        index_equations.push(format!("n{step} = n+n{}-r: {ni} = {n} + {} - {r}", step + 1, ni - n + r));
        index_equations.push(format!("m{step} = m+m{}-t: {mi} = {m} + {} - {t}", step + 1, mi - m + t));
        target = d_alpha;
        target_name = format!("d{name}");
        ni = ni - n + r;
        mi = mi - m + t;
        step += 1;
    }
    Ok(RelationChain { premise, relations, index_equations, unknowns, registry, stop_reason })
}

/// A nonnegative solution of `N = n + n' - r`, `M = m + m' - t` with
/// `r <= min(n, n')` and `t <= min(m, m')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradingSolution {
    pub n: u32,
    pub n_prime: u32,
    pub r: u32,
    pub m: u32,
    pub m_prime: u32,
    pub t: u32,
}

/// All solutions with composability indices at most `m_bound`.
pub fn grading_solutions(total_n: u32, total_m: u32, m_bound: u32) -> Vec<GradingSolution> {
    let mut out = Vec::new();
    for r in 0..=total_n {
        for n in r..=total_n {
            let n_prime = total_n + r - n;
            if n_prime < r {
                continue;
            }
            for m in 0..=m_bound {
                for m_prime in 0..=m_bound {
                    let Some(t) = (m + m_prime).checked_sub(total_m) else { continue };
                    if t <= m.min(m_prime) {
                        out.push(GradingSolution { n, n_prime, r, m, m_prime, t });
                    }
                }
            }
        }
    }
    out
}
