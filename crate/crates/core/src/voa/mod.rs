//! Truncated graded vertex algebra: partition-labelled basis, vectors, and
//! the rank-one Heisenberg instance.

mod heisenberg;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Q;

pub use heisenberg::{Heisenberg, InstanceDescriptor, Truncated, VertexSeries};

/// Basis label `a(-l1)...a(-lk)|0>` with `l1 >= ... >= lk >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn vacuum() -> Self {
        Partition(Vec::new())
    }

    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, m: u32) -> u32 {
        self.0.iter().filter(|&&p| p == m).count() as u32
    }

    pub fn with_part(&self, m: u32) -> Partition {
        let mut p = self.0.clone();
        let at = p.iter().position(|&x| x <= m).unwrap_or(p.len());
        p.insert(at, m);
        Partition(p)
    }

    pub fn without_part(&self, m: u32) -> Option<Partition> {
        let at = self.0.iter().position(|&x| x == m)?;
        let mut p = self.0.clone();
        p.remove(at);
        Some(Partition(p))
    }

    /// Distinct parts in decreasing order.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut d = self.0.clone();
        d.dedup();
        d
    }

    /// Splits off the largest part: `a(-l1) (rest)`.
    pub fn split_first(&self) -> Option<(u32, Partition)> {
        let (&first, rest) = self.0.split_first()?;
        Some((first, Partition(rest.to_vec())))
    }

    /// All partitions of `weight`, in basis order.
    pub fn all_of_weight(weight: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(weight, weight, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of basis labels with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: BTreeMap<Partition, Q>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(p: Partition) -> Self {
        Self::term(p, Q::from_integer(1.into()))
    }

    pub fn term(p: Partition, c: Q) -> Self {
        let mut v = Vector::zero();
        v.add_term(p, c);
        v
    }

    pub fn vacuum() -> Self {
        Self::basis(Partition::vacuum())
    }

    /// The generator `a = a(-1)|0>`.
    pub fn a() -> Self {
        Self::basis(Partition::new(vec![1]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * s);
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut r = self.clone();
        r.add_scaled(other, &Q::from_integer(1.into()));
        r
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut r = self.clone();
        r.add_scaled(other, &Q::from_integer((-1).into()));
        r
    }

    pub fn scale(&self, s: &Q) -> Vector {
        let mut r = Vector::zero();
        r.add_scaled(self, s);
        r
    }

    pub fn coeff(&self, p: &Partition) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight if the vector is nonzero and homogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(Partition::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Partition::weight).max()
    }

    /// Weight-`m` component.
    pub fn project(&self, m: u32) -> Vector {
        Vector { terms: self.terms.iter().filter(|(p, _)| p.weight() == m).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// Decomposition into homogeneous components.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Vector> {
        let mut out: BTreeMap<u32, Vector> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(p.weight()).or_default().add_term(p.clone(), c.clone());
        }
        out
    }

    /// Drops components above weight `n`; reports whether any were nonzero.
    pub fn truncate(&self, n: u32) -> (Vector, bool) {
        let kept = Vector { terms: self.terms.iter().filter(|(p, _)| p.weight() <= n).map(|(p, c)| (p.clone(), c.clone())).collect() };
        let dropped = kept.len() != self.len();
        (kept, dropped)
    }
}
