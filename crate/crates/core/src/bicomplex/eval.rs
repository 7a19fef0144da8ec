use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{Cochain, Kind};
use crate::correlators::{compose_at, expand_multilinear, insert_left, ComposeSpec, Correlators, InsertSpec, WbarMap};
use crate::error::{Error, Result};
use crate::ratcalc::{Rf, RfSum};
use crate::voa::{Heisenberg, Partition, Vector};

type Key = (u64, Vec<Partition>, Partition);

/// Evaluates cochains on basis tuples, memoizing components per node.
#[derive(Debug)]
pub struct Evaluator {
    corr: Arc<Correlators>,
    cache: RwLock<HashMap<Key, Rf>>,
}

impl Evaluator {
    pub fn new(corr: Arc<Correlators>) -> Self {
        Evaluator { corr, cache: RwLock::new(HashMap::new()) }
    }

    pub fn for_instance(va: Arc<Heisenberg>) -> Self {
        Evaluator::new(Arc::new(Correlators::new(va)))
    }

    pub fn correlators(&self) -> &Arc<Correlators> {
        &self.corr
    }

    pub fn va(&self) -> &Arc<Heisenberg> {
        self.corr.va()
    }

    /// `Φ(v_1..v_n)` on all components up to the cutoff, extended
    /// multilinearly from basis tuples.
    pub fn evaluate(&self, c: &Cochain, inputs: &[Vector]) -> Result<WbarMap> {
        if inputs.len() != c.arity() {
            return Err(Error::ArityMismatch { expected: c.arity(), found: inputs.len() });
        }
        let n = c.arity();
        let mut out = WbarMap::zero(n);
        let expanded = expand_multilinear(inputs);
        for mu in self.va().basis_up_to(self.va().n_max()) {
            let mut acc = RfSum::new(n);
            for (labels, k) in &expanded {
                acc.add_scaled(&self.component(c, labels, &mu)?, k)?;
            }
            out.insert(mu, acc.finish());
        }
        Ok(out)
    }

    pub fn evaluate_labels(&self, c: &Cochain, labels: &[Partition]) -> Result<WbarMap> {
        let inputs: Vec<Vector> = labels.iter().cloned().map(Vector::basis).collect();
        self.evaluate(c, &inputs)
    }

    /// Component `mu` of `Φ(ins)` for basis labels `ins`.
    pub fn component(&self, c: &Cochain, ins: &[Partition], mu: &Partition) -> Result<Rf> {
        let n = c.arity();
        if ins.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: ins.len() });
        }
        if self.support(c).is_some_and(|s| mu.weight() > s) {
            return Ok(Rf::zero(n));
        }
        match c.kind() {
            Kind::Zero => return Ok(Rf::zero(n)),
            Kind::Generator { anchor } => {
                let mut acc = RfSum::new(n);
                for (w, k) in anchor.terms() {
                    acc.add_scaled(&self.corr.e_component(ins, w, mu)?, k)?;
                }
                return Ok(acc.finish());
            }
            Kind::InsertCyclic { expanded, .. } | Kind::Delta { expanded, .. } | Kind::DeltaHalf { expanded, .. } => {
                return self.component(expanded, ins, mu);
            }
            _ => {}
        }
        let key = (c.id(), ins.to_vec(), mu.clone());
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let f = self.compute(c, ins, mu)?;
        self.cache.write().unwrap().insert(key, f.clone());
        Ok(f)
    }

    fn compute(&self, c: &Cochain, ins: &[Partition], mu: &Partition) -> Result<Rf> {
        let n = c.arity();
        match c.kind() {
            Kind::LinearCombo(terms) => {
                let mut acc = RfSum::new(n);
                for (k, t) in terms {
                    acc.add_scaled(&self.component(t, ins, mu)?, k)?;
                }
                Ok(acc.finish())
            }
            Kind::PermImage { sigma, child } => self.perm_component(child, sigma, ins, mu),
            Kind::ComposeAt { i, child } => self.distribute(child, &|ch| self.compose_component(ch, *i, ins, mu), n),
            Kind::InsertLeft(child) => self.distribute(child, &|ch| self.insert_component(ch, ins, mu), n),
            Kind::Star(spec) => self.star_component(spec, ins, mu),
            Kind::FakeConstant { value } => Ok(Rf::constant(n, value.coeff(mu))),
            Kind::FakeMulVar { slot, child } => self.component(child, ins, mu)?.mul(&Rf::var(n, *slot)),
            Kind::Zero
            | Kind::Generator { .. }
            | Kind::InsertCyclic { .. }
            | Kind::Delta { .. }
            | Kind::DeltaHalf { .. } => unreachable!("handled in component"),
        }
    }

    /// `Φ(v_σ)(z_σ)`.
    pub fn perm_component(&self, child: &Cochain, sigma: &[usize], ins: &[Partition], mu: &Partition) -> Result<Rf> {
        let permuted: Vec<Partition> = sigma.iter().map(|&s| ins[s].clone()).collect();
        self.component(child, &permuted, mu)?.permute(sigma)
    }

    /// Applies `op` termwise when a linear combination mixes truncated and
    /// untruncated terms, since they are rationalized differently.
    fn distribute(&self, child: &Cochain, op: &dyn Fn(&Cochain) -> Result<Rf>, n: usize) -> Result<Rf> {
        if let Kind::LinearCombo(terms) = child.kind() {
            if child.info().support.is_none() && terms.iter().any(|(_, t)| t.info().support.is_some()) {
                let mut acc = RfSum::new(n);
                for (k, t) in terms {
                    acc.add_scaled(&self.distribute(t, op, n)?, k)?;
                }
                return Ok(acc.finish());
            }
        }
        op(child)
    }

    /// Weight above which a truncated node vanishes, capped at the cutoff.
    fn support(&self, c: &Cochain) -> Option<u32> {
        c.info().support.map(|s| s.min(self.va().n_max()))
    }

    fn pair_bound(&self, a: &Partition, b: &Partition) -> u32 {
        let va = self.va();
        va.ope_order(a, b).max(va.ope_order(b, a))
    }

    fn zero_bound(&self, c: &Cochain, v: &Partition) -> u32 {
        c.info().anchors.iter().map(|w| self.va().ope_order(v, w)).max().unwrap_or(0)
    }

    fn insert_component(&self, child: &Cochain, ins: &[Partition], mu: &Partition) -> Result<Rf> {
        let v = &ins[0];
        let rest = &ins[1..];
        let spec = InsertSpec {
            v,
            mu,
            inner_arity: rest.len(),
            support: self.support(child),
            pair_bounds: rest.iter().map(|r| self.pair_bound(v, r)).collect(),
            zero_bound: self.zero_bound(child, v),
        };
        insert_left(self.va(), self.corr.margin(), &spec, &|b| self.component(child, rest, b))
    }

    fn compose_component(&self, child: &Cochain, i: usize, ins: &[Partition], mu: &Partition) -> Result<Rf> {
        let n = ins.len();
        let (t, c) = (i - 1, i);
        // child slot s sits at output slot s (s < t) or s + 1
        let embed: Vec<usize> = (0..n - 1).map(|s| if s < t { s } else { s + 1 }).collect();
        let eval = |b: &Partition| -> Result<Rf> {
            let mut child_ins: Vec<Partition> = ins[..t].to_vec();
            child_ins.push(b.clone());
            child_ins.extend_from_slice(&ins[c + 1..]);
            self.component(child, &child_ins, mu)?.relabel(n, &embed)
        };
        let (v, u) = (&ins[t], &ins[c]);
        if child.info().support.is_some() {
            return self.truncated_compose(v, u, n, t, c, &eval);
        }
        let spec = ComposeSpec {
            v,
            u,
            arity: n,
            t,
            c,
            pair_bounds: ins.iter().map(|w| self.pair_bound(v, w)).collect(),
            zero_bound: self.zero_bound(child, v),
            degree_bound: mu.weight() as i64 - v.weight() as i64 + child.info().deg_extra,
        };
        compose_at(self.va(), self.corr.margin(), &spec, &eval)
    }

    /// `sum_p eval(v(p) u) (z_t - z_c)^{-p-1}` over the finitely many `p`
    /// with `v(p) u` inside the cutoff.
    pub(crate) fn truncated_compose(
        &self,
        v: &Partition,
        u: &Partition,
        n: usize,
        t: usize,
        c: usize,
        eval: &dyn Fn(&Partition) -> Result<Rf>,
    ) -> Result<Rf> {
        let va = self.va();
        let top = v.weight() as i64 + u.weight() as i64 - 1;
        let low = top - va.n_max() as i64;
        let mut acc = RfSum::new(n);
        for p in low..=top {
            let img = va.mode_basis(v, p, u);
            for (b, k) in img.terms() {
                let f = eval(b)?;
                if !f.is_zero() {
                    acc.add_scaled(&f.mul(&Rf::linear_pow(n, t, c, (-p - 1) as i32))?, k)?;
                }
            }
        }
        Ok(acc.finish())
    }
}
