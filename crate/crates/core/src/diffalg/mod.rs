//! The ε-graded sewing product of cochains, its commutator, and the laws
//! and relation chains built from them.

mod chain;
mod laws;

pub(crate) use chain::solve_unknown;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::{Cochain, Evaluator, Grade, Kind, NodeInfo, Tag};
use crate::error::{Error, Result};
use crate::ratcalc::{AuxSymbol, Rf, RfSum};
use crate::scalar::Q;
use num_traits::One;
use crate::voa::{Partition, Vector};

pub use chain::{
    grading_solutions, orthogonality_chain, ChainConfig, GradingSolution, Relation, RelationChain, RelationStatus, SolvedUnknown,
};
pub use laws::{
    aligned_reverse_dot, check_antisymmetry, check_basis_independence, check_leibniz, class_invariance_check, nonvanishing_check,
    residual_report, NonvanishingReport,
};

/// Sewing parameter grading the product.
pub const EPSILON: AuxSymbol = AuxSymbol::Epsilon;
/// Formal sewing coordinate of the left factor.
pub const ZETA1: AuxSymbol = AuxSymbol::Zeta1;
/// Formal sewing coordinate of the right factor.
pub const ZETA2: AuxSymbol = AuxSymbol::Zeta2;

/// Basis of each weight space used in the dual-basis resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisChoice {
    Monomial,
    /// A seeded random triangular change of the monomial basis.
    Randomized(u64),
}

/// Declared common arguments and composable operators of two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductContext {
    /// Pairs `(i, j)` (0-based) identifying slot `i` of the left factor
    /// with slot `j` of the right factor.
    pub identifications: Vec<(usize, usize)>,
    /// Number of common composable vertex operators.
    pub t: u32,
    pub basis: BasisChoice,
}

impl ProductContext {
    /// No common arguments and no common composable operators.
    pub fn free() -> Self {
        ProductContext { identifications: Vec::new(), t: 0, basis: BasisChoice::Monomial }
    }

    /// Identifies the first `r` slots of the two factors pairwise.
    pub fn diagonal(r: usize, t: u32) -> Self {
        ProductContext { identifications: (0..r).map(|i| (i, i)).collect(), t, basis: BasisChoice::Monomial }
    }

    pub fn with_basis(mut self, basis: BasisChoice) -> Self {
        self.basis = basis;
        self
    }

    /// The context with `t` lowered to what every factor pair admits, so
    /// that products appearing in one relation share a target space.
    pub fn fitted(&self, pairs: &[(Tag, Tag)]) -> ProductContext {
        let idx = |m: Grade| match m {
            Grade::Whole(k) => k,
            Grade::Half => 0,
        };
        let t = pairs.iter().map(|(a, b)| idx(a.m).min(idx(b.m))).fold(self.t, u32::min);
        ProductContext { t, ..self.clone() }
    }

    pub fn r(&self) -> usize {
        self.identifications.len()
    }

    /// Target bidegree `(k + n - r, m + m' - t)`.
    pub fn target(&self, left: Tag, right: Tag) -> Result<Tag> {
        let (k, n) = (left.n, right.n);
        let (Grade::Whole(m1), Grade::Whole(m2)) = (left.m, right.m) else {
            return Err(Error::Domain("products need integral composability indices".into()));
        };
        if self.r() > k.min(n) {
            return Err(Error::Domain(format!("r = {} exceeds min({k}, {n})", self.r())));
        }
        if self.t > m1.min(m2) {
            return Err(Error::Domain(format!("t = {} exceeds min({m1}, {m2})", self.t)));
        }
        let mut xs = vec![false; k];
        let mut ys = vec![false; n];
        for &(i, j) in &self.identifications {
            if i >= k || j >= n || std::mem::replace(&mut xs[i], true) || std::mem::replace(&mut ys[j], true) {
                return Err(Error::Domain(format!("bad identification ({i}, {j})")));
            }
        }
        Ok(Tag::whole(k + n - self.r(), m1 + m2 - self.t))
    }

    /// Input slots of the right factor within the product's inputs.
    fn right_slots(&self, k: usize, n: usize) -> Vec<usize> {
        let mut next = k;
        (0..n)
            .map(|j| match self.identifications.iter().find(|p| p.1 == j) {
                Some(&(i, _)) => i,
                None => {
                    next += 1;
                    next - 1
                }
            })
            .collect()
    }
}

/// One sewing product; `swapped` exchanges the roles of `ζ_1` and `ζ_2`.
#[derive(Debug)]
pub struct StarSpec {
    pub left: Cochain,
    pub right: Cochain,
    pub ctx: ProductContext,
    pub swapped: bool,
}

pub(crate) fn star_node(left: &Cochain, right: &Cochain, ctx: &ProductContext, swapped: bool) -> Result<Cochain> {
    let tag = ctx.target(left.tag(), right.tag())?;
    let info = NodeInfo { support: Some(u32::MAX), ..NodeInfo::default() };
    let spec = StarSpec { left: left.clone(), right: right.clone(), ctx: ctx.clone(), swapped };
    Ok(Cochain::make(tag, Kind::Star(spec), info))
}

/// `Φ * Ψ`: per dual component `w'`,
/// `Σ_l ε^l Σ_u <w', Y(Φ(..), ζ_1) u> <w', Y(Ψ(..), ζ_2) ū>` over a basis
/// `u` of each weight space with dual basis `ū`, followed by parameter
/// exclusion for the identified slots. Sums over weights are cut at the
/// instance cutoff.
pub fn star(left: &Cochain, right: &Cochain, ctx: &ProductContext) -> Result<Cochain> {
    star_node(left, right, ctx, false)
}

/// `Φ · Ψ = Φ * Ψ - Ψ * Φ`, where `Ψ * Φ` keeps the slot layout of
/// `Φ * Ψ` and sews `Ψ` at `ζ_1` and `Φ` at `ζ_2`.
pub fn dot(left: &Cochain, right: &Cochain, ctx: &ProductContext) -> Result<Cochain> {
    star_node(left, right, ctx, false)?.sub(&star_node(left, right, ctx, true)?)
}

impl Evaluator {
    pub(crate) fn star_component(&self, spec: &StarSpec, ins: &[Partition], mu: &Partition) -> Result<Rf> {
        let va = self.va().clone();
        let (k, n) = (spec.left.arity(), spec.right.arity());
        let total = k + n;
        let right_ins: Vec<Partition> = spec.ctx.right_slots(k, n).iter().map(|&s| ins[s].clone()).collect();
        let (za, zb) = if spec.swapped { (ZETA2, ZETA1) } else { (ZETA1, ZETA2) };
        let mut acc = RfSum::new(total);
        let mut left_cache = HashMap::new();
        let mut right_cache = HashMap::new();
        for l in 0..=va.n_max() {
            for (u, ubar) in self.sewing_basis(l, spec.ctx.basis)? {
                let a = self.sewing_factor(&spec.left, &ins[..k], mu, &u, l, za, 0, total, &mut left_cache)?;
                if a.is_zero() {
                    continue;
                }
                let b = self.sewing_factor(&spec.right, &right_ins, mu, &ubar, l, zb, k, total, &mut right_cache)?;
                if b.is_zero() {
                    continue;
                }
                acc.add_scaled(&a.mul(&b)?.mul_aux(EPSILON, l as i32), &Q::one())?;
            }
        }
        acc.finish().merge_vars(k, &spec.ctx.identifications)
    }

    /// `<mu', Y(Φ(ins)(x), ζ) u> = Σ_b Φ_b(x) <mu', b(p) u> ζ^{-p-1}` over
    /// basis labels `b` inside the cutoff, placed at variables
    /// `offset .. offset + arity` of a function of `total` variables.
    #[allow(clippy::too_many_arguments)]
    fn sewing_factor(
        &self,
        phi: &Cochain,
        ins: &[Partition],
        mu: &Partition,
        u: &Vector,
        l: u32,
        zeta: AuxSymbol,
        offset: usize,
        total: usize,
        cache: &mut HashMap<Partition, Rf>,
    ) -> Result<Rf> {
        let va = self.va().clone();
        let map: Vec<usize> = (offset..offset + phi.arity()).collect();
        let mut acc = RfSum::new(total);
        for b in va.basis_up_to(va.n_max()) {
            let e = mu.weight() as i64 - b.weight() as i64 - l as i64;
            let p = -e - 1;
            let mut coef = crate::scalar::q(0);
            for (ul, uc) in u.terms() {
                coef += uc * va.mode_basis(&b, p, ul).coeff(mu);
            }
            if num_traits::Zero::is_zero(&coef) {
                continue;
            }
            if !cache.contains_key(&b) {
                let f = self.component(phi, ins, &b)?.relabel(total, &map)?;
                cache.insert(b.clone(), f);
            }
            let f = &cache[&b];
            acc.add_scaled(&f.mul_aux(zeta, e as i32), &coef)?;
        }
        Ok(acc.finish())
    }

    /// Pairs `(u, ū)` for weight `l` in the chosen basis.
    pub fn sewing_basis(&self, l: u32, choice: BasisChoice) -> Result<Vec<(Vector, Vector)>> {
        let va = self.va();
        match choice {
            BasisChoice::Monomial => va.dual_basis(l),
            BasisChoice::Randomized(seed) => {
                let labels = va.basis(l);
                let d = labels.len();
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ l as u64);
                // unit lower triangular times upper triangular with nonzero diagonal
                let mut lower = vec![vec![0i64; d]; d];
                let mut upper = vec![vec![0i64; d]; d];
                for i in 0..d {
                    lower[i][i] = 1;
                    upper[i][i] = if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) };
                    for j in 0..i {
                        lower[i][j] = rng.gen_range(-3..=3);
                    }
                    for j in i + 1..d {
                        upper[i][j] = rng.gen_range(-3..=3);
                    }
                }
                let basis: Vec<Vector> = (0..d)
                    .map(|i| {
                        let mut v = Vector::zero();
                        for (j, lab) in labels.iter().enumerate() {
                            let c: i64 = (0..d).map(|k| lower[i][k] * upper[k][j]).sum();
                            v.add_term(lab.clone(), crate::scalar::q(c));
                        }
                        v
                    })
                    .collect();
                va.dual_of(&basis)
            }
        }
    }
}
