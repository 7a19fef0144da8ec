//! Cochains as a closed symbolic expression language, their evaluation,
//! the coboundary operators, membership checks and family cohomology.

mod checks;
pub(crate) mod cohomology;
mod eval;
mod sexpr;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::diffalg::StarSpec;
use crate::error::{Error, Result};
use crate::scalar::{q, sign, Q};
use crate::voa::{Partition, Vector};

pub use checks::{
    check_composable, check_half_membership, check_l0, check_lm1, check_shuffle, probe_tuples, CheckReport,
    ComposableReport,
};
pub use cohomology::{cohomology_dim, flatten, CohomologyReport};
pub use eval::Evaluator;
pub use sexpr::{from_sexpr, to_sexpr};

/// Declared composability index `m`; `Half` is the special index of the
/// intermediate space between `C^2_0` and `C^2_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grade {
    Whole(u32),
    Half,
}

impl Grade {
    /// Twice the index, so that `Half` sits between 0 and 1.
    fn doubled(self) -> u32 {
        match self {
            Grade::Whole(k) => 2 * k,
            Grade::Half => 1,
        }
    }

    /// Index after one coboundary step.
    pub fn lowered(self) -> Option<Grade> {
        match self {
            Grade::Whole(0) => None,
            Grade::Whole(k) => Some(Grade::Whole(k - 1)),
            Grade::Half => Some(Grade::Whole(0)),
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Whole(k) => write!(f, "{k}"),
            Grade::Half => write!(f, "1/2"),
        }
    }
}

/// Bidegree `(n, m)` of a cochain space `C^n_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tag {
    pub n: usize,
    pub m: Grade,
}

impl Tag {
    pub fn new(n: usize, m: Grade) -> Self {
        Tag { n, m }
    }

    pub fn whole(n: usize, m: u32) -> Self {
        Tag { n, m: Grade::Whole(m) }
    }

    /// Inclusions `C^n_m ⊂ C^n_{m-1}` and `C^2_m ⊂ C^2_{1/2}` for `m >= 1`.
    pub fn is_subspace_of(&self, other: &Tag) -> bool {
        if self.n != other.n || (self.m == Grade::Half || other.m == Grade::Half) && self.n != 2 {
            return false;
        }
        self.m.doubled() >= other.m.doubled()
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{}_{}", self.n, self.m)
    }
}

/// Node kinds of the cochain language.
#[derive(Debug)]
pub enum Kind {
    /// `Φ_w(v_1..v_n) = E^(n)_W(v_1..v_n; w)`.
    Generator { anchor: Vector },
    Zero,
    LinearCombo(Vec<(Q, Cochain)>),
    /// `(σΦ)(v_1..v_n)(z_1..z_n) = Φ(v_σ(1)..v_σ(n))(z_σ(1)..z_σ(n))`.
    PermImage { sigma: Vec<usize>, child: Cochain },
    /// `Φ ∘_i E^(2)_{V;1}`, with `i` 1-based.
    ComposeAt { i: usize, child: Cochain },
    /// `E^(1)_W ∘_2 Φ`.
    InsertLeft(Cochain),
    /// `σ_{n+1,1,..,n}(E^(1)_W ∘_2 Φ)`.
    InsertCyclic { child: Cochain, expanded: Cochain },
    Delta { child: Cochain, expanded: Cochain },
    DeltaHalf { child: Cochain, expanded: Cochain },
    Star(StarSpec),
    /// Test double: the constant vector `value` on every basis tuple.
    FakeConstant { value: Vector },
    /// Test double: the child's output multiplied by `z_slot`.
    FakeMulVar { slot: usize, child: Cochain },
}

/// Facts about a node used to bound poles when rationalizing.
#[derive(Debug, Clone, Default)]
pub struct NodeInfo {
    /// Anchors of the generators the node is built from.
    pub anchors: BTreeSet<Partition>,
    /// For finite truncated objects, the weight above which components
    /// vanish; sewing products use `u32::MAX`, i.e. the instance cutoff.
    pub support: Option<u32>,
    /// Extra degree at infinity beyond that of a matrix element.
    pub deg_extra: i64,
}

impl NodeInfo {
    fn merge<'a>(items: impl IntoIterator<Item = &'a NodeInfo>) -> NodeInfo {
        let mut out = NodeInfo::default();
        let mut first = true;
        for i in items {
            out.anchors.extend(i.anchors.iter().cloned());
            out.deg_extra = out.deg_extra.max(i.deg_extra);
            out.support = if first { i.support } else { out.support.zip(i.support).map(|(a, b)| a.max(b)) };
            first = false;
        }
        out
    }
}

#[derive(Debug)]
pub struct Node {
    id: u64,
    tag: Tag,
    kind: Kind,
    info: NodeInfo,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// Immutable, shareable cochain expression.
#[derive(Debug, Clone)]
pub struct Cochain(Arc<Node>);

impl Cochain {
    pub(crate) fn make(tag: Tag, kind: Kind, info: NodeInfo) -> Cochain {
        let id = NEXT_ID.fetch_add(1, Ordering::Relaxed);
        Cochain(Arc::new(Node { id, tag, kind, info }))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn tag(&self) -> Tag {
        self.0.tag
    }

    pub fn arity(&self) -> usize {
        self.0.tag.n
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn info(&self) -> &NodeInfo {
        &self.0.info
    }

    pub fn generator(anchor: Vector, n: usize, m: Grade) -> Cochain {
        let info = NodeInfo { anchors: anchor.terms().map(|(p, _)| p.clone()).collect(), support: None, deg_extra: 0 };
        Cochain::make(Tag::new(n, m), Kind::Generator { anchor }, info)
    }

    pub fn zero(n: usize, m: Grade) -> Cochain {
        Cochain::make(Tag::new(n, m), Kind::Zero, NodeInfo { support: Some(0), ..NodeInfo::default() })
    }

    /// `Σ c_k Φ_k`; all terms must share one tag.
    pub fn linear(terms: Vec<(Q, Cochain)>) -> Result<Cochain> {
        let first = terms.first().ok_or_else(|| Error::Domain("empty linear combination".into()))?;
        let tag = first.1.tag();
        if let Some((_, bad)) = terms.iter().find(|(_, c)| c.tag() != tag) {
            return Err(Error::InconsistentTags(format!("{} and {} in one linear combination", tag, bad.tag())));
        }
        let info = NodeInfo::merge(terms.iter().map(|(_, c)| c.info()));
        Ok(Cochain::make(tag, Kind::LinearCombo(terms), info))
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        Cochain::linear(vec![(q(1), self.clone()), (q(1), other.clone())])
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        Cochain::linear(vec![(q(1), self.clone()), (q(-1), other.clone())])
    }

    pub fn scale(&self, c: Q) -> Cochain {
        Cochain::linear(vec![(c, self.clone())]).expect("single term")
    }

    /// Retags the cochain into a larger space along an inclusion.
    pub fn viewed_as(&self, tag: Tag) -> Result<Cochain> {
        if !self.tag().is_subspace_of(&tag) {
            return Err(Error::InconsistentTags(format!("{} is not contained in {tag}", self.tag())));
        }
        Ok(Cochain::make(tag, Kind::LinearCombo(vec![(q(1), self.clone())]), self.info().clone()))
    }

    pub fn perm(&self, sigma: Vec<usize>) -> Result<Cochain> {
        let n = self.arity();
        let mut seen = vec![false; n];
        if sigma.len() != n || sigma.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::Domain(format!("{sigma:?} is not a permutation of {n} slots")));
        }
        Ok(Cochain::make(self.tag(), Kind::PermImage { sigma, child: self.clone() }, self.info().clone()))
    }

    fn summand_tag(&self) -> Result<Tag> {
        let m = self.tag().m.lowered().ok_or_else(|| {
            Error::Domain(format!("coboundary terms need composability m >= 1, got {}", self.tag()))
        })?;
        Ok(Tag::new(self.arity() + 1, m))
    }

    /// `Φ ∘_i E^(2)_{V;1}` for `1 <= i <= n`.
    pub fn compose_at(&self, i: usize) -> Result<Cochain> {
        if i == 0 || i > self.arity() {
            return Err(Error::IndexOutOfRange { index: i, arity: self.arity() });
        }
        let tag = self.summand_tag()?;
        Ok(Cochain::make(tag, Kind::ComposeAt { i, child: self.clone() }, self.info().clone()))
    }

    pub fn insert_left(&self) -> Result<Cochain> {
        let tag = self.summand_tag()?;
        Ok(Cochain::make(tag, Kind::InsertLeft(self.clone()), self.info().clone()))
    }

    pub fn insert_cyclic(&self) -> Result<Cochain> {
        let n = self.arity();
        let mut sigma = vec![n];
        sigma.extend(0..n);
        let expanded = self.insert_left()?.perm(sigma)?;
        Ok(Cochain::make(
            expanded.tag(),
            Kind::InsertCyclic { child: self.clone(), expanded: expanded.clone() },
            expanded.info().clone(),
        ))
    }

    fn coboundary_terms(&self) -> Result<Cochain> {
        let n = self.arity();
        let mut terms = vec![(q(1), self.insert_left()?)];
        for i in 1..=n {
            terms.push((sign(i as i64), self.compose_at(i)?));
        }
        terms.push((sign(n as i64 + 1), self.insert_cyclic()?));
        Cochain::linear(terms)
    }

    /// `δ^n_m Φ`, tagged `C^{n+1}_{m-1}`; defined for integral `m >= 1`.
    pub fn delta(&self) -> Result<Cochain> {
        if !matches!(self.tag().m, Grade::Whole(k) if k >= 1) {
            return Err(Error::Domain(format!("δ is not defined on {}", self.tag())));
        }
        let expanded = self.coboundary_terms()?;
        Ok(Cochain::make(
            expanded.tag(),
            Kind::Delta { child: self.clone(), expanded: expanded.clone() },
            expanded.info().clone(),
        ))
    }

    /// `δ^2_{1/2} Φ`, tagged `C^3_0`, for `Φ` in `C^2_{1/2}` or a subspace.
    pub fn delta_half(&self) -> Result<Cochain> {
        let half = Tag::new(2, Grade::Half);
        if !self.tag().is_subspace_of(&half) {
            return Err(Error::Domain(format!("δ_1/2 is not defined on {}", self.tag())));
        }
        let expanded = self.viewed_as(half)?.coboundary_terms()?;
        Ok(Cochain::make(
            expanded.tag(),
            Kind::DeltaHalf { child: self.clone(), expanded: expanded.clone() },
            expanded.info().clone(),
        ))
    }

    pub fn fake_constant(value: Vector, n: usize, m: Grade) -> Cochain {
        let support = value.max_weight().unwrap_or(0);
        Cochain::make(Tag::new(n, m), Kind::FakeConstant { value }, NodeInfo { support: Some(support), ..NodeInfo::default() })
    }

    pub fn fake_mul_var(&self, slot: usize) -> Result<Cochain> {
        if slot >= self.arity() {
            return Err(Error::IndexOutOfRange { index: slot, arity: self.arity() });
        }
        let mut info = self.info().clone();
        info.deg_extra += 1;
        Ok(Cochain::make(self.tag(), Kind::FakeMulVar { slot, child: self.clone() }, info))
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_sexpr(self))
    }
}
