//! Matrix elements of products of vertex operators as exact rational
//! functions, W-bar valued maps, and the duality check.

mod duality;
mod rationalize;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::ratcalc::{AuxSymbol, Rf, RfSum};
use crate::scalar::Q;
use crate::voa::{Heisenberg, Partition, Vector};

pub use duality::{DualityReport, RegionReport};
pub use rationalize::{compose_at, insert_left, ComposeSpec, InsertSpec};

/// Default number of extra coefficients checked when certifying a
/// reconstructed rational function.
pub const DEFAULT_MARGIN: i64 = 2;

/// Truncated W-bar valued rational function: one rational function per
/// dual basis label of weight at most the cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbarMap {
    arity: usize,
    components: BTreeMap<Partition, Rf>,
}

impl WbarMap {
    pub fn zero(arity: usize) -> Self {
        WbarMap { arity, components: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert(&mut self, mu: Partition, f: Rf) {
        assert_eq!(f.arity(), self.arity);
        if f.is_zero() {
            self.components.remove(&mu);
        } else {
            self.components.insert(mu, f);
        }
    }

    pub fn get(&self, mu: &Partition) -> Rf {
        self.components.get(mu).cloned().unwrap_or_else(|| Rf::zero(self.arity))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Partition, &Rf)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add_scaled(&mut self, other: &WbarMap, s: &Q) -> Result<()> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        for (mu, f) in &other.components {
            let sum = self.get(mu).add(&f.scale(s))?;
            self.insert(mu.clone(), sum);
        }
        Ok(())
    }

    pub fn sub(&self, other: &WbarMap) -> Result<WbarMap> {
        let mut r = self.clone();
        r.add_scaled(other, &Q::from_integer((-1).into()))?;
        Ok(r)
    }

    /// First nonzero component, if any.
    pub fn first_nonzero(&self) -> Option<(&Partition, &Rf)> {
        self.components.iter().next()
    }

    /// Applies `sigma` to the position variables of every component.
    pub fn act_sn(&self, sigma: &[usize]) -> Result<WbarMap> {
        let mut out = WbarMap::zero(self.arity);
        for (mu, f) in &self.components {
            out.insert(mu.clone(), f.permute(sigma)?);
        }
        Ok(out)
    }

    /// Components of weight exactly `m`.
    pub fn project(&self, m: u32) -> WbarMap {
        WbarMap {
            arity: self.arity,
            components: self.components.iter().filter(|(p, _)| p.weight() == m).map(|(p, f)| (p.clone(), f.clone())).collect(),
        }
    }

    pub fn eval_aux_one(&self, sym: AuxSymbol) -> WbarMap {
        let mut out = WbarMap::zero(self.arity);
        for (mu, f) in &self.components {
            out.insert(mu.clone(), f.eval_aux_one(sym));
        }
        out
    }
}

impl fmt::Display for WbarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return writeln!(f, "0");
        }
        for (mu, r) in &self.components {
            writeln!(f, "<{mu}'> : {r}")?;
        }
        Ok(())
    }
}

type EKey = (Partition, Vec<Partition>, Partition);

/// E-map evaluator with a concurrent-read-safe component cache.
#[derive(Debug)]
pub struct Correlators {
    va: Arc<Heisenberg>,
    margin: i64,
    cache: RwLock<HashMap<EKey, Rf>>,
}

impl Correlators {
    pub fn new(va: Arc<Heisenberg>) -> Self {
        Correlators { va, margin: DEFAULT_MARGIN, cache: RwLock::new(HashMap::new()) }
    }

    pub fn va(&self) -> &Arc<Heisenberg> {
        &self.va
    }

    pub fn margin(&self) -> i64 {
        self.margin
    }

    /// Component `mu` of `E(Y(v_1, z_1) ... Y(v_n, z_n) w)` for basis labels,
    /// obtained by inserting the vertex operators one at a time from the
    /// right and rationalizing each expansion.
    pub fn e_component(&self, inputs: &[Partition], anchor: &Partition, mu: &Partition) -> Result<Rf> {
        if inputs.is_empty() {
            let c = if mu == anchor { 1 } else { 0 };
            return Ok(Rf::constant(0, Q::from_integer(c.into())));
        }
        let key = (anchor.clone(), inputs.to_vec(), mu.clone());
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let v = &inputs[0];
        let rest = &inputs[1..];
        let spec = InsertSpec {
            v,
            mu,
            inner_arity: rest.len(),
            support: rest.is_empty().then_some(anchor.weight()),
            pair_bounds: rest.iter().map(|r| self.va.ope_order(v, r)).collect(),
            zero_bound: self.va.ope_order(v, anchor),
        };
        let f = insert_left(&self.va, self.margin, &spec, &|b| self.e_component(rest, anchor, b))?;
        self.cache.write().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// `E^(n)_W(v_1 .. v_n; w)` on all components up to the cutoff.
    pub fn e_map_w(&self, inputs: &[Vector], w: &Vector) -> Result<WbarMap> {
        let n = inputs.len();
        let mut out = WbarMap::zero(n);
        let expanded = expand_multilinear(inputs);
        for mu in self.va.basis_up_to(self.va.n_max()) {
            let mut acc = RfSum::new(n);
            for (labels, c) in &expanded {
                for (wl, wc) in w.terms() {
                    acc.add_scaled(&self.e_component(labels, wl, &mu)?, &(c * wc))?;
                }
            }
            out.insert(mu, acc.finish());
        }
        self.assert_pole_bounds(&expanded, &out)?;
        Ok(out)
    }

    /// `E^{W;(n)}_{WV}(w; v_1 .. v_n) = E^(n)_W(v_1 .. v_n; w)`.
    pub fn e_map_wv(&self, w: &Vector, inputs: &[Vector]) -> Result<WbarMap> {
        self.e_map_w(inputs, w)
    }

    /// `E^(l)_{V;1}(v_1 .. v_l)`.
    pub fn e_map_v_one(&self, inputs: &[Vector]) -> Result<WbarMap> {
        self.e_map_w(inputs, &Vector::vacuum())
    }

    /// Whether `E^(n)_W(v; w)` has nonzero components just above the cutoff.
    pub fn overflow_probe(&self, inputs: &[Vector], w: &Vector) -> Result<bool> {
        let expanded = expand_multilinear(inputs);
        for mu in self.va.basis(self.va.n_max() + 1) {
            let mut acc = RfSum::new(inputs.len());
            for (labels, c) in &expanded {
                for (wl, wc) in w.terms() {
                    acc.add_scaled(&self.e_component(labels, wl, &mu)?, &(c * wc))?;
                }
            }
            if !acc.finish().is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn assert_pole_bounds(&self, expanded: &[(Vec<Partition>, Q)], out: &WbarMap) -> Result<()> {
        let n = out.arity();
        for (_, f) in out.components() {
            for i in 0..n {
                for j in i + 1..n {
                    let bound = expanded
                        .iter()
                        .map(|(l, _)| l[i].weight() + l[j].weight())
                        .max()
                        .unwrap_or(0);
                    if f.divisor().pair(i, j) > bound {
                        return Err(Error::Reconstruction(format!(
                            "pole order {} at (z{}, z{}) exceeds weight bound {bound}",
                            f.divisor().pair(i, j),
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Expands a tuple of vectors into basis-label tuples with coefficients.
pub fn expand_multilinear(inputs: &[Vector]) -> Vec<(Vec<Partition>, Q)> {
    let mut acc: Vec<(Vec<Partition>, Q)> = vec![(Vec::new(), Q::from_integer(1.into()))];
    for v in inputs {
        let mut next = Vec::new();
        for (labels, c) in &acc {
            for (p, pc) in v.terms() {
                let mut l = labels.clone();
                l.push(p.clone());
                next.push((l, c * pc));
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn setup() -> Correlators {
        Correlators::new(Arc::new(Heisenberg::new(4).unwrap()))
    }

    #[test]
    fn two_point_function() {
        let c = setup();
        let a = Partition::new(vec![1]);
        let f = c.e_component(&[a.clone(), a.clone()], &Partition::vacuum(), &Partition::vacuum()).unwrap();
        assert_eq!(f, Rf::linear_pow(2, 0, 1, -2));
    }

    #[test]
    fn empty_product_is_anchor() {
        let c = setup();
        let w: Vector = "2 * a(-2)|0> + 1 * a(-1)a(-1)|0>".parse().unwrap();
        let m = c.e_map_w(&[], &w).unwrap();
        assert_eq!(m.get(&Partition::new(vec![2])), Rf::constant(0, q(2)));
        assert_eq!(m.get(&Partition::new(vec![1, 1])), Rf::constant(0, q(1)));
        assert_eq!(m.components().count(), 2);
    }

    #[test]
    fn one_point_creation() {
        let c = setup();
        let m = c.e_map_v_one(&[Vector::a()]).unwrap();
        // Y(a, z)|0> = sum_k z^k a(-k-1)|0>
        for k in 0..4 {
            assert_eq!(m.get(&Partition::new(vec![k + 1])), Rf::var_pow(1, 0, k as i32));
        }
    }
}
