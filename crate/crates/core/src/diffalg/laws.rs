//! Product laws checked by evaluation on the probe grid.

use super::{dot, star, BasisChoice, ProductContext};
use crate::bicomplex::{probe_tuples, CheckReport, Cochain, Evaluator};
use crate::error::{Error, Result};
use crate::scalar::sign;
use crate::voa::Partition;

fn show(t: &[Partition]) -> String {
    let parts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Checks that `residual` evaluates to the zero map on every basis tuple
/// of weight at most `probe`.
pub fn residual_report(ev: &Evaluator, name: &str, residual: &Cochain, probe: u32) -> CheckReport {
    let mut rep = CheckReport::new(name);
    let va = ev.va().clone();
    rep.guard(|rep| {
        for ins in probe_tuples(&va, residual.arity(), probe) {
            for mu in va.basis_up_to(va.n_max()) {
                let f = ev.component(residual, &ins, &mu)?;
                rep.checked += 1;
                if !f.is_zero() {
                    rep.fail(format!("inputs {} component <{mu}'>: residual {f}", show(&ins)));
                    return Ok(());
                }
            }
        }
        Ok(())
    });
    rep
}

/// The context of the reversed product `Ψ · Φ`.
pub fn reversed(ctx: &ProductContext) -> ProductContext {
    ProductContext { identifications: ctx.identifications.iter().map(|&(i, j)| (j, i)).collect(), ..ctx.clone() }
}

/// Permutation taking the slot layout of `Ψ · Φ` (reversed context) to
/// that of `Φ · Ψ`, for arities `k` of `Φ` and `n` of `Ψ`.
pub fn reverse_layout(k: usize, n: usize, ctx: &ProductContext) -> Vec<usize> {
    let mut sigma = Vec::with_capacity(k + n - ctx.r());
    let mut next = k;
    for j in 0..n {
        match ctx.identifications.iter().find(|p| p.1 == j) {
            Some(&(i, _)) => sigma.push(i),
            None => {
                sigma.push(next);
                next += 1;
            }
        }
    }
    sigma.extend((0..k).filter(|i| !ctx.identifications.iter().any(|p| p.0 == *i)));
    sigma
}

/// `Ψ · Φ` rearranged into the slot layout of `Φ · Ψ`.
pub fn aligned_reverse_dot(phi: &Cochain, psi: &Cochain, ctx: &ProductContext) -> Result<Cochain> {
    dot(psi, phi, &reversed(ctx))?.perm(reverse_layout(phi.arity(), psi.arity(), ctx))
}

/// `Φ · Ψ + Ψ · Φ = 0` after aligning slot layouts.
pub fn check_antisymmetry(ev: &Evaluator, phi: &Cochain, psi: &Cochain, ctx: &ProductContext, probe: u32) -> CheckReport {
    let r = dot(phi, psi, ctx).and_then(|d| d.add(&aligned_reverse_dot(phi, psi, ctx)?));
    match r {
        Ok(res) => residual_report(ev, "dot antisymmetry", &res, probe),
        Err(e) => failed("dot antisymmetry", e),
    }
}

fn failed(name: &str, e: Error) -> CheckReport {
    let mut rep = CheckReport::new(name);
    rep.fail(format!("error: {e}"));
    rep
}

/// Star product with the monomial basis against a seeded random basis.
pub fn check_basis_independence(
    ev: &Evaluator,
    phi: &Cochain,
    psi: &Cochain,
    ctx: &ProductContext,
    seed: u64,
    probe: u32,
) -> CheckReport {
    let a = ctx.clone().with_basis(BasisChoice::Monomial);
    let b = ctx.clone().with_basis(BasisChoice::Randomized(seed));
    match star(phi, psi, &a).and_then(|x| x.sub(&star(phi, psi, &b)?)) {
        Ok(res) => residual_report(ev, "star basis independence", &res, probe),
        Err(e) => failed("star basis independence", e),
    }
}

/// `δ(Φ * Ψ) - (δΦ) * Ψ - (-1)^k Φ * (δΨ)` with `k` the arity of `Φ`.
/// Only products without identified slots are supported, since the
/// coboundary reindexes the slots of one factor.
pub fn check_leibniz(ev: &Evaluator, phi: &Cochain, psi: &Cochain, ctx: &ProductContext, probe: u32) -> Result<CheckReport> {
    if ctx.r() != 0 {
        return Err(Error::Domain("Leibniz check needs a product without identified slots".into()));
    }
    let lhs = star(phi, psi, ctx)?.delta()?;
    let a = star(&phi.delta()?, psi, ctx)?;
    let b = star(phi, &psi.delta()?, ctx)?;
    for side in [&a, &b] {
        if side.tag() != lhs.tag() {
            return Err(Error::InconsistentTags(format!("{} against {}", side.tag(), lhs.tag())));
        }
    }
    let k = phi.arity() as i64;
    let residual = Cochain::linear(vec![(sign(0), lhs), (sign(1), a), (-sign(k), b)])?;
    Ok(residual_report(ev, "Leibniz law", &residual, probe))
}

/// The cross-term cancellation `φ·δη + (δη)·φ = 0` and the full regrouping
/// of `(δ(φ+η))·(φ+η)` into `(δφ)·φ`, the exact group, the cancelling
/// group and `(δη)·η`.
pub fn class_invariance_check(
    ev: &Evaluator,
    phi: &Cochain,
    eta: &Cochain,
    ctx: &ProductContext,
    probe: u32,
) -> Vec<CheckReport> {
    let build = || -> Result<(Cochain, Cochain)> {
        if phi.tag() != eta.tag() {
            return Err(Error::InconsistentTags(format!("{} and {}", phi.tag(), eta.tag())));
        }
        let (dphi, deta) = (phi.delta()?, eta.delta()?);
        // φ·δη rearranged into the layout of (δη)·φ
        let phi_deta = aligned_reverse_dot(&deta, phi, ctx)?;
        let cancel = phi_deta.add(&dot(&deta, phi, ctx)?)?;
        let sum = phi.add(eta)?;
        let total = dot(&sum.delta()?, &sum, ctx)?;
        let exact = dot(&dphi, eta, ctx)?.sub(&phi_deta)?;
        let parts = Cochain::linear(vec![
            (sign(0), total),
            (sign(1), dot(&dphi, phi, ctx)?),
            (sign(1), exact),
            (sign(1), cancel.clone()),
            (sign(1), dot(&deta, eta, ctx)?),
        ])?;
        Ok((cancel, parts))
    };
    match build() {
        Ok((cancel, parts)) => vec![
            residual_report(ev, "cross-term cancellation", &cancel, probe),
            residual_report(ev, "class regrouping", &parts, probe),
        ],
        Err(e) => vec![failed("cross-term cancellation", e)],
    }
}

/// Whether `(δφ)·φ` has a nonzero component on the grid, with the
/// bidegree argument excluding `δφ = γ·φ`.
#[derive(Debug, Clone)]
pub struct NonvanishingReport {
    pub witness: Option<String>,
    pub obstruction: String,
    pub checked: usize,
}

pub fn nonvanishing_check(ev: &Evaluator, phi: &Cochain, ctx: &ProductContext, probe: u32) -> Result<NonvanishingReport> {
    let d = phi.delta()?;
    let prod = dot(&d, phi, ctx)?;
    let va = ev.va().clone();
    let mut witness = None;
    let mut checked = 0;
    'outer: for ins in probe_tuples(&va, prod.arity(), probe) {
        for mu in va.basis_up_to(va.n_max()) {
            checked += 1;
            let f = ev.component(&prod, &ins, &mu)?;
            if !f.is_zero() {
                witness = Some(format!("inputs {} component <{mu}'>: {f}", show(&ins)));
                break 'outer;
            }
        }
    }
    let (n, m) = (phi.tag().n, phi.tag().m);
    let obstruction = format!(
        "if (δφ)·φ vanished then δφ ∈ C^{}_{} would equal γ·φ for some γ ∈ C^n'_m' sharing t operators with φ; \
         the grading gives {} = m' + {m} - t, so m' = t - 1, contradicting t <= min(m', {m})",
        n + 1,
        m.lowered().map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
        m.lowered().map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
    );
    Ok(NonvanishingReport { witness, obstruction, checked })
}
