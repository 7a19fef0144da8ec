//! The rank-one Heisenberg (free boson) vertex algebra.
//!
//! Vertex operators of basis states are built by iterated normal-ordered
//! products: `Y(a(-l) v, z) = :d^(l-1) a(z) Y(v, z):` with annihilation
//! modes placed to the right. Mode actions are exact and unbounded in
//! weight; the cutoff `n_max` only governs what public queries report.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::{Partition, Vector};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{binomial, factorial, q, sign, Q};

type ModeKey = (Partition, i64, Partition);

/// A value together with the flag raised when components above the cutoff
/// were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncated<T> {
    pub value: T,
    pub overflow: bool,
}

/// `Y(v, z) w` as a finite table `z`-exponent -> coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSeries {
    pub terms: BTreeMap<i64, Vector>,
    pub overflow: bool,
}

#[derive(Debug)]
struct GramBlock {
    basis: Vec<Partition>,
    gram: Matrix,
    inverse: Matrix,
}

/// Truncated rank-one Heisenberg vertex algebra with memoized modes.
#[derive(Debug)]
pub struct Heisenberg {
    n_max: u32,
    modes: RwLock<HashMap<ModeKey, Arc<Vector>>>,
    dual_modes: RwLock<HashMap<ModeKey, Arc<Vector>>>,
    ope: RwLock<HashMap<(Partition, Partition), u32>>,
    grams: RwLock<HashMap<u32, Arc<GramBlock>>>,
}

/// Plain-text description of an instance: `kind`, `n_max`, `rank`,
/// `central_charge` as `key=value` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDescriptor {
    pub n_max: u32,
    pub rank: u32,
    pub central_charge: Q,
}

impl InstanceDescriptor {
    pub fn to_text(&self) -> String {
        format!(
            "kind=heisenberg\nn_max={}\nrank={}\ncentral_charge={}\n",
            self.n_max,
            self.rank,
            crate::scalar::fmt_q(&self.central_charge)
        )
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut kind = None;
        let mut n_max = None;
        let mut rank = None;
        let mut c = None;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
            let v = v.trim();
            let bad = || Error::Parse(format!("line {}: bad value for {}", lineno + 1, k.trim()));
            match k.trim() {
                "kind" => kind = Some(v.to_string()),
                "n_max" => n_max = Some(v.parse::<u32>().map_err(|_| bad())?),
                "rank" => rank = Some(v.parse::<u32>().map_err(|_| bad())?),
                "central_charge" => c = Some(crate::scalar::parse_q(v).map_err(|_| bad())?),
                other => return Err(Error::Parse(format!("line {}: unknown key {other}", lineno + 1))),
            }
        }
        if kind.as_deref() != Some("heisenberg") {
            return Err(Error::Parse("instance kind must be heisenberg".into()));
        }
        let d = InstanceDescriptor {
            n_max: n_max.ok_or_else(|| Error::Parse("missing n_max".into()))?,
            rank: rank.ok_or_else(|| Error::Parse("missing rank".into()))?,
            central_charge: c.ok_or_else(|| Error::Parse("missing central_charge".into()))?,
        };
        if d.rank != 1 || d.central_charge != Q::from_integer(d.rank.into()) {
            return Err(Error::Parse("only the rank-one Heisenberg instance with c = 1 is available".into()));
        }
        Ok(d)
    }
}

/// Coefficient of `a(m)` in `d^(l-1) a(z)`: `binom(-m-1, l-1)`.
fn field_coeff(m: i64, l: u32) -> Q {
    binomial(-m - 1, l as i64 - 1)
}

impl Heisenberg {
    /// Builds the instance and verifies the creation, identity and
    /// Virasoro relations on every basis vector within the cutoff.
    pub fn new(n_max: u32) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::Domain(format!("n_max must be at least 2, got {n_max}")));
        }
        let h = Self::unchecked(n_max);
        if let Some(fail) = h.construction_checks().into_iter().find(|c| !c.1) {
            return Err(Error::Domain(format!("instance self-check failed: {}", fail.0)));
        }
        Ok(h)
    }

    fn unchecked(n_max: u32) -> Self {
        Heisenberg {
            n_max,
            modes: RwLock::new(HashMap::new()),
            dual_modes: RwLock::new(HashMap::new()),
            ope: RwLock::new(HashMap::new()),
            grams: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_descriptor(d: &InstanceDescriptor) -> Result<Self> {
        Self::new(d.n_max)
    }

    pub fn descriptor(&self) -> InstanceDescriptor {
        InstanceDescriptor { n_max: self.n_max, rank: 1, central_charge: self.central_charge() }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn central_charge(&self) -> Q {
        Q::one()
    }

    pub fn basis(&self, weight: u32) -> Vec<Partition> {
        Partition::all_of_weight(weight)
    }

    /// All basis labels of weight at most `bound`.
    pub fn basis_up_to(&self, bound: u32) -> Vec<Partition> {
        (0..=bound).flat_map(Partition::all_of_weight).collect()
    }

    pub fn vacuum(&self) -> Vector {
        Vector::vacuum()
    }

    /// `omega = 1/2 a(-1)^2 |0>`.
    pub fn omega(&self) -> Vector {
        Vector::term(Partition::new(vec![1, 1]), crate::scalar::q_frac(1, 2))
    }

    /// `a(m)` on a basis vector.
    fn a_mode(m: i64, w: &Partition) -> Vector {
        match m.cmp(&0) {
            std::cmp::Ordering::Less => Vector::basis(w.with_part((-m) as u32)),
            std::cmp::Ordering::Equal => Vector::zero(),
            std::cmp::Ordering::Greater => {
                let m = m as u32;
                match w.without_part(m) {
                    Some(rest) => Vector::term(rest, Q::from_integer((m * w.multiplicity(m)).into())),
                    None => Vector::zero(),
                }
            }
        }
    }

    fn a_mode_vec(m: i64, w: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (p, c) in w.terms() {
            out.add_scaled(&Self::a_mode(m, p), c);
        }
        out
    }

    /// Transpose of `a(m)` on coordinate functionals: the functional
    /// `x -> coeff_mu(a(m) x)` written over basis labels.
    fn a_mode_dual(m: i64, mu: &Partition) -> Vector {
        match m.cmp(&0) {
            std::cmp::Ordering::Less => match mu.without_part((-m) as u32) {
                Some(rest) => Vector::basis(rest),
                None => Vector::zero(),
            },
            std::cmp::Ordering::Equal => Vector::zero(),
            std::cmp::Ordering::Greater => {
                let m32 = m as u32;
                let up = mu.with_part(m32);
                let c = Q::from_integer((m32 * up.multiplicity(m32)).into());
                Vector::term(up, c)
            }
        }
    }

    fn a_mode_dual_vec(m: i64, f: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (p, c) in f.terms() {
            out.add_scaled(&Self::a_mode_dual(m, p), c);
        }
        out
    }

    /// Exact `v(n) w` on basis labels, with no weight cutoff.
    pub fn mode_basis(&self, v: &Partition, n: i64, w: &Partition) -> Arc<Vector> {
        let key = (v.clone(), n, w.clone());
        if let Some(hit) = self.modes.read().unwrap().get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.compute_mode(v, n, w));
        self.modes.write().unwrap().insert(key, out.clone());
        out
    }

    fn compute_mode(&self, v: &Partition, n: i64, w: &Partition) -> Vector {
        let f = v.weight() as i64 + w.weight() as i64 - n - 1;
        if f < 0 {
            return Vector::zero();
        }
        let Some((l, rest)) = v.split_first() else {
            return if n == -1 { Vector::basis(w.clone()) } else { Vector::zero() };
        };
        let mut out = Vector::zero();
        for s in 1..=f {
            let m = -s;
            let inner = self.mode_basis(&rest, n - m - l as i64, w);
            if inner.is_zero() {
                continue;
            }
            out.add_scaled(&Self::a_mode_vec(m, &inner), &field_coeff(m, l));
        }
        for m in w.distinct_parts() {
            let m = m as i64;
            let lowered = Self::a_mode(m, w);
            for (p, c) in lowered.terms() {
                let inner = self.mode_basis(&rest, n - m - l as i64, p);
                out.add_scaled(&inner, &(c * field_coeff(m, l)));
            }
        }
        out
    }

    /// The functional `b -> coeff_mu(v(n) b)` as a combination of labels `b`.
    pub fn dual_mode_basis(&self, v: &Partition, n: i64, mu: &Partition) -> Arc<Vector> {
        let key = (v.clone(), n, mu.clone());
        if let Some(hit) = self.dual_modes.read().unwrap().get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.compute_dual_mode(v, n, mu));
        self.dual_modes.write().unwrap().insert(key, out.clone());
        out
    }

    fn compute_dual_mode(&self, v: &Partition, n: i64, mu: &Partition) -> Vector {
        let qw = mu.weight() as i64 - v.weight() as i64 + n + 1;
        if qw < 0 {
            return Vector::zero();
        }
        let Some((l, rest)) = v.split_first() else {
            return if n == -1 { Vector::basis(mu.clone()) } else { Vector::zero() };
        };
        let mut out = Vector::zero();
        for s in mu.distinct_parts() {
            let m = -(s as i64);
            let lowered = Self::a_mode_dual(m, mu);
            for (p, c) in lowered.terms() {
                let inner = self.dual_mode_basis(&rest, n - m - l as i64, p);
                out.add_scaled(&inner, &(c * field_coeff(m, l)));
            }
        }
        for m in 1..=qw {
            let inner = self.dual_mode_basis(&rest, n - m - l as i64, mu);
            if inner.is_zero() {
                continue;
            }
            out.add_scaled(&Self::a_mode_dual_vec(m, &inner), &field_coeff(m, l));
        }
        out
    }

    /// Exact bilinear `v(n) w` with no cutoff.
    pub fn mode(&self, v: &Vector, n: i64, w: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (pv, cv) in v.terms() {
            for (pw, cw) in w.terms() {
                out.add_scaled(&self.mode_basis(pv, n, pw), &(cv * cw));
            }
        }
        out
    }

    /// `v(n) w` with components above the cutoff dropped and flagged.
    pub fn mode_apply(&self, v: &Vector, n: i64, w: &Vector) -> Truncated<Vector> {
        let (value, overflow) = self.mode(v, n, w).truncate(self.n_max);
        Truncated { value, overflow }
    }

    /// `Y(v, z) w` up to output weight `n_max`; `overflow` records a nonzero
    /// coefficient just beyond the cutoff.
    pub fn vertex_series(&self, v: &Vector, w: &Vector) -> VertexSeries {
        let mut terms = BTreeMap::new();
        let mut overflow = false;
        for (wv, vh) in v.homogeneous_parts() {
            for (ww, wh) in w.homogeneous_parts() {
                let base = wv as i64 + ww as i64;
                for out_w in 0..=self.n_max as i64 + 1 {
                    let e = out_w - base;
                    let coeff = self.mode(&vh, -e - 1, &wh);
                    if coeff.is_zero() {
                        continue;
                    }
                    if out_w > self.n_max as i64 {
                        overflow = true;
                    } else {
                        let slot: &mut Vector = terms.entry(e).or_default();
                        *slot = slot.add(&coeff);
                    }
                }
            }
        }
        terms.retain(|_, v: &mut Vector| !v.is_zero());
        VertexSeries { terms, overflow }
    }

    /// `L(n) v = omega(n+1) v`, exact.
    pub fn virasoro(&self, n: i64, v: &Vector) -> Vector {
        self.mode(&self.omega(), n + 1, v)
    }

    pub fn virasoro_apply(&self, n: i64, v: &Vector) -> Truncated<Vector> {
        let (value, overflow) = self.virasoro(n, v).truncate(self.n_max);
        Truncated { value, overflow }
    }

    /// Adjoint mode `v^dagger(n) w` from
    /// `Y^dagger(v, z) = Y(e^{z L(1)} (-z^-2)^{L(0)} v, z^-1)`.
    pub fn adjoint_mode(&self, v: &Vector, n: i64, w: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (h, vh) in v.homogeneous_parts() {
            let h = h as i64;
            let mut lk = vh.clone();
            let mut k = 0i64;
            while !lk.is_zero() {
                let c = sign(h) / Q::from_integer(factorial(k as u32));
                out.add_scaled(&self.mode(&lk, 2 * h - k - n - 2, w), &c);
                lk = self.virasoro(1, &lk);
                k += 1;
            }
        }
        out
    }

    /// The operator `v^dagger(n)` tabulated on all basis vectors whose image
    /// stays within the cutoff.
    pub fn adjoint_mode_table(&self, v: &Vector, n: i64) -> Truncated<BTreeMap<Partition, Vector>> {
        let mut table = BTreeMap::new();
        let mut overflow = false;
        for b in self.basis_up_to(self.n_max) {
            let img = self.adjoint_mode(v, n, &Vector::basis(b.clone()));
            let (kept, dropped) = img.truncate(self.n_max);
            overflow |= dropped;
            if !kept.is_zero() {
                table.insert(b, kept);
            }
        }
        Truncated { value: table, overflow }
    }

    /// `<u, w>` as the vacuum coefficient of `u^dagger(-1) w`.
    pub fn form_basis(&self, u: &Partition, w: &Partition) -> Q {
        if u.weight() != w.weight() {
            return Q::zero();
        }
        self.adjoint_mode(&Vector::basis(u.clone()), -1, &Vector::basis(w.clone())).coeff(&Partition::vacuum())
    }

    fn gram_block(&self, weight: u32) -> Result<Arc<GramBlock>> {
        if let Some(hit) = self.grams.read().unwrap().get(&weight) {
            return Ok(hit.clone());
        }
        let basis = self.basis(weight);
        let rows = basis.iter().map(|u| basis.iter().map(|w| self.form_basis(u, w)).collect()).collect();
        let gram = Matrix::from_rows(rows);
        let inverse = gram.inverse().ok_or(Error::SingularGram(weight))?;
        let block = Arc::new(GramBlock { basis, gram, inverse });
        self.grams.write().unwrap().insert(weight, block.clone());
        Ok(block)
    }

    /// Gram matrix of the monomial basis at `weight`.
    pub fn gram_matrix(&self, weight: u32) -> Result<Matrix> {
        if weight > self.n_max {
            return Err(Error::TruncationOverflow(format!("weight {weight} above n_max {}", self.n_max)));
        }
        Ok(self.gram_block(weight)?.gram.clone())
    }

    /// Bilinear form on arbitrary vectors.
    pub fn form(&self, u: &Vector, w: &Vector) -> Result<Q> {
        let mut acc = Q::zero();
        for (pu, cu) in u.terms() {
            for (pw, cw) in w.terms() {
                if pu.weight() != pw.weight() {
                    continue;
                }
                let block = self.gram_block(pu.weight())?;
                let i = block.basis.iter().position(|b| b == pu).unwrap();
                let j = block.basis.iter().position(|b| b == pw).unwrap();
                acc += cu * cw * block.gram.get(i, j);
            }
        }
        Ok(acc)
    }

    /// Pairs `(u_l, ubar_l)` for the monomial basis at `weight`.
    pub fn dual_basis(&self, weight: u32) -> Result<Vec<(Vector, Vector)>> {
        if weight > self.n_max {
            return Err(Error::TruncationOverflow(format!("weight {weight} above n_max {}", self.n_max)));
        }
        let block = self.gram_block(weight)?;
        let basis: Vec<Vector> = block.basis.iter().cloned().map(Vector::basis).collect();
        Ok(Self::dual_from(&basis, &block.inverse))
    }

    /// Dual vectors for an arbitrary basis of one weight space.
    pub fn dual_of(&self, basis: &[Vector]) -> Result<Vec<(Vector, Vector)>> {
        let rows: Result<Vec<Vec<Q>>> =
            basis.iter().map(|u| basis.iter().map(|w| self.form(u, w)).collect()).collect();
        let gram = Matrix::from_rows(rows?);
        let weight = basis.first().and_then(Vector::weight).unwrap_or(0);
        let inv = gram.inverse().ok_or(Error::SingularGram(weight))?;
        Ok(Self::dual_from(basis, &inv))
    }

    fn dual_from(basis: &[Vector], inv: &Matrix) -> Vec<(Vector, Vector)> {
        (0..basis.len())
            .map(|l| {
                let mut bar = Vector::zero();
                for (j, u) in basis.iter().enumerate() {
                    bar.add_scaled(u, inv.get(l, j));
                }
                (basis[l].clone(), bar)
            })
            .collect()
    }

    /// Largest `p + 1` with `v(p) w != 0` for `p >= 0` (zero if none): the
    /// order of the pole of `Y(v, z1) Y(w, z2)` at `z1 = z2`.
    pub fn ope_order(&self, v: &Partition, w: &Partition) -> u32 {
        let key = (v.clone(), w.clone());
        if let Some(&hit) = self.ope.read().unwrap().get(&key) {
            return hit;
        }
        let top = v.weight() as i64 + w.weight() as i64 - 1;
        let mut order = 0;
        for p in (0..=top).rev() {
            if !self.mode_basis(v, p, w).is_zero() {
                order = (p + 1) as u32;
                break;
            }
        }
        self.ope.write().unwrap().insert(key, order);
        order
    }

    fn construction_checks(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let vac = Partition::vacuum();
        for b in self.basis_up_to(self.n_max) {
            let bv = Vector::basis(b.clone());
            let creation = *self.mode_basis(&b, -1, &vac) == bv
                && (0..=b.weight() as i64).all(|n| self.mode_basis(&b, n, &vac).is_zero());
            out.push((format!("creation {b:?}"), creation));
            let identity = (-3..=3).all(|n| {
                let r = self.mode_basis(&vac, n, &b);
                if n == -1 { *r == bv } else { r.is_zero() }
            });
            out.push((format!("identity {b:?}"), identity));
        }
        out.push(("virasoro bracket".into(), self.virasoro_residual_free()));
        out
    }

    /// The construction checks together with the bilinear form and the
    /// Virasoro pins: `<1, 1> = 1`, symmetric invertible Gram matrices on
    /// every weight, `a(1) a = 1` and `[L(2), L(-2)] 1 = c/2 1`.
    pub fn axiom_checks(&self) -> Vec<(String, bool)> {
        let mut out = self.construction_checks();
        let vac = self.vacuum();
        out.push(("vacuum norm".into(), self.form(&vac, &vac) == Ok(q(1))));
        for w in 0..=self.n_max {
            let ok = self.gram_matrix(w).is_ok_and(|g| {
                let b = self.basis(w);
                b.iter().all(|x| b.iter().all(|y| self.form_basis(x, y) == self.form_basis(y, x)))
                    && g.rows() == b.len()
            }) && self.dual_basis(w).is_ok();
            out.push((format!("gram weight {w}"), ok));
        }
        out.push(("a(1) a = 1".into(), self.mode(&Vector::a(), 1, &Vector::a()) == vac));
        let comm = self.virasoro(2, &self.virasoro(-2, &vac)).sub(&self.virasoro(-2, &self.virasoro(2, &vac)));
        out.push(("[L(2), L(-2)] 1 = c/2 1".into(), comm == vac.scale(&(self.central_charge() / q(2)))));
        out
    }

    /// Checks `[L(m), L(n)] = (m-n) L(m+n) + c/12 (m^3-m) delta` for
    /// `|m|, |n| <= 2` on every basis vector whose images stay in range.
    pub fn virasoro_residual_free(&self) -> bool {
        let c = self.central_charge();
        for b in self.basis_up_to(self.n_max) {
            let v = Vector::basis(b.clone());
            for m in -2i64..=2 {
                for n in -2i64..=2 {
                    if b.weight() as i64 - m - n > self.n_max as i64
                        || b.weight() as i64 - m.min(n) > self.n_max as i64
                    {
                        continue;
                    }
                    let lhs = self.virasoro(m, &self.virasoro(n, &v)).sub(&self.virasoro(n, &self.virasoro(m, &v)));
                    let mut rhs = self.virasoro(m + n, &v).scale(&q(m - n));
                    if m + n == 0 {
                        rhs.add_scaled(&v, &(c.clone() * q(m * m * m - m) / q(12)));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_frac;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn heisenberg_commutator() {
        let h = Heisenberg::new(4).unwrap();
        let a = Vector::a();
        assert_eq!(h.mode(&a, 1, &a), Vector::vacuum());
        assert_eq!(h.mode(&a, -1, &Vector::vacuum()), a);
        // [a(2), a(-2)] = 2
        let up = h.mode(&a, -2, &Vector::vacuum());
        assert_eq!(h.mode(&a, 2, &up), Vector::vacuum().scale(&q(2)));
    }

    #[test]
    fn central_charge_is_one() {
        let h = Heisenberg::new(4).unwrap();
        let vac = Vector::vacuum();
        let lhs = h.virasoro(2, &h.virasoro(-2, &vac)).sub(&h.virasoro(-2, &h.virasoro(2, &vac)));
        assert_eq!(lhs, vac.scale(&q_frac(1, 2)));
    }

    #[test]
    fn dual_modes_match_forward_modes() {
        let h = Heisenberg::new(4).unwrap();
        let labels = h.basis_up_to(4);
        for v in h.basis_up_to(3) {
            for n in -4i64..=4 {
                for mu in &labels {
                    let dual = h.dual_mode_basis(&v, n, mu);
                    for b in &labels {
                        assert_eq!(dual.coeff(b), h.mode_basis(&v, n, b).coeff(mu), "{v:?} {n} {b:?} {mu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_of_weight_one_primary() {
        let h = Heisenberg::new(4).unwrap();
        let a = Vector::a();
        for n in -3i64..=3 {
            for b in h.basis_up_to(3) {
                let w = Vector::basis(b);
                assert_eq!(h.adjoint_mode(&a, n, &w), h.mode(&a, -n, &w).scale(&q(-1)));
            }
        }
        assert_eq!(h.form(&a, &a).unwrap(), q(-1));
        assert_eq!(h.gram_matrix(0).unwrap().get(0, 0), &q(1));
    }

    #[test]
    fn dual_basis_resolves_identity() {
        let h = Heisenberg::new(4).unwrap();
        for wgt in 0..=4 {
            let pairs = h.dual_basis(wgt).unwrap();
            for (l, (_, bar)) in pairs.iter().enumerate() {
                for (k, (u, _)) in pairs.iter().enumerate() {
                    let expect = if l == k { q(1) } else { q(0) };
                    assert_eq!(h.form(bar, u).unwrap(), expect);
                }
            }
            assert!(h.gram_matrix(wgt).unwrap().is_symmetric());
        }
    }

    #[test]
    fn ope_orders() {
        let h = Heisenberg::new(4).unwrap();
        assert_eq!(h.ope_order(&p(&[1]), &p(&[1])), 2);
        assert_eq!(h.ope_order(&p(&[2]), &p(&[2])), 4);
        assert_eq!(h.ope_order(&Partition::vacuum(), &p(&[2])), 0);
    }

    #[test]
    fn descriptor_round_trip() {
        let h = Heisenberg::new(5).unwrap();
        let d = h.descriptor();
        assert_eq!(InstanceDescriptor::parse(&d.to_text()).unwrap(), d);
        assert!(InstanceDescriptor::parse("kind=heisenberg\nn_max=x\n").is_err());
        assert!(Heisenberg::new(1).is_err());
    }
}
