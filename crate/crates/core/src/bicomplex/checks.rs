//! Membership checks on a finite probe grid of basis input tuples.

use std::collections::BTreeMap;
use std::fmt;

use super::{Cochain, Evaluator, Grade};
use crate::correlators::{compose_at, ComposeSpec};
use crate::error::{Error, Result};
use crate::ratcalc::{AuxSymbol, Rf};
use crate::scalar::sign;
use crate::voa::{Heisenberg, Partition, Vector};

/// Outcome of one check: how many cases were compared and the first
/// failure, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records a failure unless one is already recorded.
    pub fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    /// Runs `f`, converting an error into a recorded failure.
    pub fn guard(&mut self, f: impl FnOnce(&mut Self) -> Result<()>) -> &mut Self {
        if let Err(e) = f(self) {
            self.fail(format!("error: {e}"));
        }
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: pass ({} cases)", self.name, self.checked),
            Some(m) => write!(f, "{}: FAIL after {} cases: {m}", self.name, self.checked),
        }
    }
}

/// All tuples of `n` basis labels of weight at most `probe`.
pub fn probe_tuples(va: &Heisenberg, n: usize, probe: u32) -> Vec<Vec<Partition>> {
    let labels = va.basis_up_to(probe);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for l in &labels {
                let mut t2 = t.clone();
                t2.push(l.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn show(t: &[Partition]) -> String {
    let parts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `λ^{L(0)} Φ(v)(z) = Φ(λ^{L(0)} v)(λ z)` as identities in `λ`.
pub fn check_l0(ev: &Evaluator, phi: &Cochain, probe: u32) -> CheckReport {
    let mut rep = CheckReport::new("L(0)-conjugation");
    let va = ev.va().clone();
    let lam = AuxSymbol::Lambda;
    rep.guard(|rep| {
        for ins in probe_tuples(&va, phi.arity(), probe) {
            let win: i32 = ins.iter().map(|p| p.weight() as i32).sum();
            for mu in va.basis_up_to(va.n_max()) {
                let f = ev.component(phi, &ins, &mu)?;
                let lhs = f.mul_aux(lam, mu.weight() as i32);
                let rhs = f.scale_vars(lam)?.mul_aux(lam, win);
                rep.checked += 1;
                if lhs != rhs {
                    rep.fail(format!("inputs {} component <{mu}'>: {lhs} vs {rhs}", show(&ins)));
                    return Ok(());
                }
            }
        }
        Ok(())
    });
    rep
}

/// Both clauses of the `L(-1)`-derivative property: `∂_i Φ = Φ(.. L(-1)v_i ..)`
/// per slot, and `Σ_i ∂_i Φ = L_W(-1) Φ`.
pub fn check_lm1(ev: &Evaluator, phi: &Cochain, probe: u32) -> CheckReport {
    let mut rep = CheckReport::new("L(-1)-derivative");
    let va = ev.va().clone();
    let n = phi.arity();
    rep.guard(|rep| {
        for ins in probe_tuples(&va, n, probe) {
            let inputs: Vec<Vector> = ins.iter().cloned().map(Vector::basis).collect();
            let base = ev.evaluate(phi, &inputs)?;
            for i in 0..n {
                let mut shifted = inputs.clone();
                shifted[i] = va.virasoro(-1, &inputs[i]);
                let rhs = ev.evaluate(phi, &shifted)?;
                for mu in va.basis_up_to(va.n_max()) {
                    let lhs = base.get(&mu).derive(i)?;
                    rep.checked += 1;
                    if lhs != rhs.get(&mu) {
                        rep.fail(format!(
                            "clause (i), slot {} on inputs {} component <{mu}'>: {lhs} vs {}",
                            i + 1,
                            show(&ins),
                            rhs.get(&mu)
                        ));
                        return Ok(());
                    }
                }
            }
            for mu in va.basis_up_to(va.n_max()) {
                let mut lhs = Rf::zero(n);
                for i in 0..n {
                    lhs = lhs.add(&base.get(&mu).derive(i)?)?;
                }
                // <mu', L(-1) Φ> = Σ_b <mu', L(-1) b> Φ_b
                let mut rhs = Rf::zero(n);
                if mu.weight() > 0 {
                    for b in va.basis(mu.weight() - 1) {
                        let c = va.virasoro(-1, &Vector::basis(b.clone())).coeff(&mu);
                        if c != num_traits::Zero::zero() {
                            rhs = rhs.add(&ev.component(phi, &ins, &b)?.scale(&c))?;
                        }
                    }
                }
                rep.checked += 1;
                if lhs != rhs {
                    rep.fail(format!("clause (ii) on inputs {} component <{mu}'>: {lhs} vs {rhs}", show(&ins)));
                    return Ok(());
                }
            }
        }
        Ok(())
    });
    rep
}

/// Inverses of the `(s, l - s)` shuffles of `l` letters, with signs.
fn inverse_shuffles(l: usize, s: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    // images of the first s letters form an increasing subset
    for mask in 0u32..(1 << l) {
        if mask.count_ones() as usize != s {
            continue;
        }
        let mut sigma: Vec<usize> = (0..l).filter(|i| mask & (1 << i) != 0).collect();
        sigma.extend((0..l).filter(|i| mask & (1 << i) == 0));
        let mut inv = vec![0; l];
        for (i, &x) in sigma.iter().enumerate() {
            inv[x] = i;
        }
        let inversions =
            (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).filter(|&(i, j)| sigma[i] > sigma[j]).count();
        out.push((inv, inversions as i64));
    }
    out
}

/// Vanishing of `Σ_{σ ∈ J^{-1}_{l;s}} (-1)^{|σ|} σ(Φ(v_σ(1) .. v_σ(l), v_{l+1} ..))`.
pub fn check_shuffle(ev: &Evaluator, phi: &Cochain, l: usize, s: usize, probe: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("shuffle l={l} s={s}"));
    let n = phi.arity();
    if l > n || s == 0 || s >= l {
        rep.fail(format!("parameters need l <= n = {n} and 1 <= s <= l-1"));
        return rep;
    }
    let va = ev.va().clone();
    let perms: Vec<(Vec<usize>, i64)> = inverse_shuffles(l, s)
        .into_iter()
        .map(|(mut p, sg)| {
            p.extend(l..n);
            (p, sg)
        })
        .collect();
    rep.guard(|rep| {
        for ins in probe_tuples(&va, n, probe) {
            for mu in va.basis_up_to(va.n_max()) {
                let mut acc = Rf::zero(n);
                for (p, sg) in &perms {
                    acc = acc.add(&ev.perm_component(phi, p, &ins, &mu)?.scale(&sign(*sg)))?;
                }
                rep.checked += 1;
                if !acc.is_zero() {
                    rep.fail(format!("inputs {} component <{mu}'>: shuffle sum {acc}", show(&ins)));
                    return Ok(());
                }
            }
        }
        Ok(())
    });
    rep
}

/// Result of the two composability conditions with the realized pole
/// orders as witnesses for `N^n_m`.
#[derive(Debug, Clone)]
pub struct ComposableReport {
    pub condition1: CheckReport,
    pub condition2: CheckReport,
    /// Largest realized pole order at `z_i = z_j` (1-based pairs).
    pub witnesses: BTreeMap<(usize, usize), u32>,
    /// Set when the declared index exceeds the one being checked.
    pub warning: Option<String>,
}

impl ComposableReport {
    pub fn passed(&self) -> bool {
        self.condition1.passed() && self.condition2.passed()
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Both composability conditions for `m` extra vertex operators.
///
/// Condition 1 feeds `Y(v_{k_1}, z_{k_1} - ζ_i) .. Y(v_{k_l}, z_{k_l} - ζ_i) 1`
/// into slot `i` with the `ζ_i` as extra variables and requires the result
/// to be free of every `ζ_i`, certified by the symbolic derivative and by
/// agreement of two different specializations. Condition 2 places `m`
/// vertex operators to the left of `Φ`.
pub fn check_composable(ev: &Evaluator, phi: &Cochain, m: u32, probe: u32) -> ComposableReport {
    let va = ev.va().clone();
    let n = phi.arity();
    let total = n + m as usize;
    let mut witnesses = BTreeMap::new();
    let mut c1 = CheckReport::new(format!("composability condition 1 (m={m})"));
    let mut c2 = CheckReport::new(format!("composability condition 2 (m={m})"));
    let warning = match phi.tag().m {
        Grade::Whole(k) if k < m => Some(format!("declared {} but checked against m={m}", phi.tag())),
        _ => None,
    };
    let record = |f: &Rf, witnesses: &mut BTreeMap<(usize, usize), u32>| {
        for (i, j, k) in f.divisor().pair_factors() {
            if j < total {
                let e = witnesses.entry((i + 1, j + 1)).or_insert(0);
                *e = (*e).max(k);
            }
        }
    };
    if n > 0 {
        c1.guard(|rep| {
            for lens in compositions(total, n) {
                for ins in probe_tuples(&va, total, probe) {
                    for mu in va.basis_up_to(va.n_max()) {
                        let f = condition1_value(ev, phi, &lens, &ins, &mu)?;
                        rep.checked += 1;
                        for z in total..total + n {
                            let d = f.derive(z)?;
                            if !d.is_zero() {
                                rep.fail(format!(
                                    "groups {lens:?} inputs {} component <{mu}'>: d/dzeta{} = {d}",
                                    show(&ins),
                                    z - total + 1
                                ));
                                return Ok(());
                            }
                        }
                        let first: Vec<usize> = (0..total).chain((0..n).map(|_| 0)).collect();
                        let last: Vec<usize> = (0..total).chain((0..n).map(|_| total - 1)).collect();
                        let (a, b) = (f.relabel(total, &first)?, f.relabel(total, &last)?);
                        if a != b {
                            rep.fail(format!("groups {lens:?} inputs {}: specializations differ", show(&ins)));
                            return Ok(());
                        }
                        record(&a, &mut witnesses);
                    }
                }
            }
            Ok(())
        });
    }
    c2.guard(|rep| {
        let mut chain = phi.clone();
        for _ in 0..m {
            chain = super::Cochain::make(
                super::Tag::new(chain.arity() + 1, Grade::Whole(0)),
                super::Kind::InsertLeft(chain.clone()),
                chain.info().clone(),
            );
        }
        for ins in probe_tuples(&va, total, probe) {
            for mu in va.basis_up_to(va.n_max()) {
                let f = ev.component(&chain, &ins, &mu)?;
                rep.checked += 1;
                record(&f, &mut witnesses);
            }
        }
        Ok(())
    });
    ComposableReport { condition1: c1, condition2: c2, witnesses, warning }
}

/// `<mu', Φ(U_1 ⊗ .. ⊗ U_n)(ζ_1 .. ζ_n)>` with `U_i` the product of the
/// vertex operators of group `i` applied to the vacuum; variables are
/// `z_1 .. z_{m+n}` followed by `ζ_1 .. ζ_n`.
fn condition1_value(ev: &Evaluator, phi: &Cochain, lens: &[usize], ins: &[Partition], mu: &Partition) -> Result<Rf> {
    let n = lens.len();
    let total = ins.len();
    let arity = total + n;
    // (slot, input index) in application order, outermost operator first
    let mut ops = Vec::new();
    let mut k = 0;
    for (slot, &l) in lens.iter().enumerate() {
        for _ in 0..l {
            ops.push((slot, k));
            k += 1;
        }
    }
    let labels = vec![Partition::vacuum(); n];
    value(ev, phi, &ops, ops.len(), labels, ins, mu, arity)
}

#[allow(clippy::too_many_arguments)]
fn value(
    ev: &Evaluator,
    phi: &Cochain,
    ops: &[(usize, usize)],
    idx: usize,
    labels: Vec<Partition>,
    ins: &[Partition],
    mu: &Partition,
    arity: usize,
) -> Result<Rf> {
    let total = ins.len();
    if idx == 0 {
        let map: Vec<usize> = (0..labels.len()).map(|s| total + s).collect();
        return ev.component(phi, &labels, mu)?.relabel(arity, &map);
    }
    let (slot, k) = ops[idx - 1];
    let v = &ins[k];
    let va = ev.va();
    let t = k;
    let c = total + slot;
    let eval = |b: &Partition| -> Result<Rf> {
        let mut l2 = labels.clone();
        l2[slot] = b.clone();
        value(ev, phi, ops, idx - 1, l2, ins, mu, arity)
    };
    if phi.info().support.is_some() {
        return ev.truncated_compose(v, &labels[slot], arity, t, c, &eval);
    }
    let bound = |a: &Partition, b: &Partition| va.ope_order(a, b).max(va.ope_order(b, a));
    let mut pair_bounds = vec![0; arity];
    for &(_, j) in &ops[..idx - 1] {
        pair_bounds[j] = bound(v, &ins[j]);
    }
    for (s, lab) in labels.iter().enumerate() {
        pair_bounds[total + s] = bound(v, lab);
    }
    let spec = ComposeSpec {
        v,
        u: &labels[slot],
        arity,
        t,
        c,
        pair_bounds,
        zero_bound: phi.info().anchors.iter().map(|w| va.ope_order(v, w)).max().unwrap_or(0),
        degree_bound: mu.weight() as i64 - v.weight() as i64 + phi.info().deg_extra,
    };
    compose_at(va, ev.correlators().margin(), &spec, &eval).map_err(|e| match e {
        Error::Reconstruction(m) => Error::Reconstruction(format!("composability assembly: {m}")),
        other => other,
    })
}

/// Membership in `C^2_{1/2}`: the two grouped sums defining the space are
/// rational on the probe grid.
pub fn check_half_membership(ev: &Evaluator, phi: &Cochain, probe: u32) -> CheckReport {
    let mut rep = CheckReport::new("C^2_1/2 membership");
    if phi.arity() != 2 {
        rep.fail(format!("arity {} is not 2", phi.arity()));
        return rep;
    }
    rep.guard(|rep| {
        let half = phi.viewed_as(super::Tag::new(2, Grade::Half))?;
        let group1 = half.insert_left()?.add(&half.compose_at(2)?)?;
        let group2 = half.compose_at(1)?.add(&half.insert_cyclic()?)?;
        let va = ev.va().clone();
        for ins in probe_tuples(&va, 3, probe) {
            for g in [&group1, &group2] {
                ev.evaluate_labels(g, &ins)?;
                rep.checked += 1;
            }
        }
        Ok(())
    });
    rep
}
