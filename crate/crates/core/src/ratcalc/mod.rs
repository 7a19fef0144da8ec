//! Exact multivariate rational functions whose poles lie only on the
//! hyperplanes `z_i = z_j` and `z_i = 0`.

mod poly;
mod series;
mod text;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{sign, Q};

pub use poly::{AuxSymbol, Exponents, Poly, AUX_COUNT};
pub use series::{Expansion, Series};

/// Powers of the structured factors `(z_i - z_j)` (for `i < j`) and `z_i`
/// dividing a numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoleDivisor {
    arity: usize,
    pair: Vec<u32>,
    axis: Vec<u32>,
}

impl PoleDivisor {
    pub fn trivial(arity: usize) -> Self {
        PoleDivisor { arity, pair: vec![0; arity * arity.saturating_sub(1) / 2], axis: vec![0; arity] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.arity);
        i * self.arity - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Power of `(z_i - z_j)`; the order of `i`, `j` does not matter.
    pub fn pair(&self, i: usize, j: usize) -> u32 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pair[self.idx(a, b)]
    }

    pub fn axis(&self, i: usize) -> u32 {
        self.axis[i]
    }

    fn set_pair(&mut self, i: usize, j: usize, k: u32) {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let idx = self.idx(a, b);
        self.pair[idx] = k;
    }

    pub fn is_trivial(&self) -> bool {
        self.pair.iter().all(|&k| k == 0) && self.axis.iter().all(|&k| k == 0)
    }

    /// Total degree of the divisor polynomial.
    pub fn degree(&self) -> u32 {
        self.pair.iter().sum::<u32>() + self.axis.iter().sum::<u32>()
    }

    /// Nonzero pair factors as `(i, j, k)` with `i < j`.
    pub fn pair_factors(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.arity {
            for j in i + 1..self.arity {
                let k = self.pair(i, j);
                if k > 0 {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    pub fn axis_factors(&self) -> Vec<(usize, u32)> {
        (0..self.arity).filter(|&i| self.axis[i] > 0).map(|i| (i, self.axis[i])).collect()
    }

    /// Factorwise maximum of two divisors.
    pub fn lcm(&self, other: &PoleDivisor) -> PoleDivisor {
        PoleDivisor {
            arity: self.arity,
            pair: self.pair.iter().zip(&other.pair).map(|(a, b)| *a.max(b)).collect(),
            axis: self.axis.iter().zip(&other.axis).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    fn sum(&self, other: &PoleDivisor) -> PoleDivisor {
        PoleDivisor {
            arity: self.arity,
            pair: self.pair.iter().zip(&other.pair).map(|(a, b)| a + b).collect(),
            axis: self.axis.iter().zip(&other.axis).map(|(a, b)| a + b).collect(),
        }
    }

    /// Multiplies `num` by the factors of `to` missing from `self`.
    fn lift(&self, num: &Poly, to: &PoleDivisor) -> Poly {
        let mut r = num.clone();
        for i in 0..self.arity {
            let d = to.axis[i] - self.axis[i];
            if d > 0 {
                r = r.mul_var_pow(i, d as i32);
            }
            for j in i + 1..self.arity {
                let d = to.pair(i, j) - self.pair(i, j);
                if d > 0 {
                    r = r.mul_linear_pow(i, j, d);
                }
            }
        }
        r
    }

    /// Whether every factor of `self` divides `other`.
    pub fn divides(&self, other: &PoleDivisor) -> bool {
        self.pair.iter().zip(&other.pair).all(|(a, b)| a <= b) && self.axis.iter().zip(&other.axis).all(|(a, b)| a <= b)
    }

    /// The divisor as an explicit polynomial.
    pub fn to_poly(&self) -> Poly {
        PoleDivisor::trivial(self.arity).lift(&Poly::one(self.arity), self)
    }
}

/// Canonical quotient `numerator / divisor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    div: PoleDivisor,
}

pub type Rf = RationalFunction;

impl RationalFunction {
    pub fn zero(arity: usize) -> Self {
        Rf { num: Poly::zero(arity), div: PoleDivisor::trivial(arity) }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Q::one())
    }

    pub fn constant(arity: usize, c: Q) -> Self {
        Self::from_poly(Poly::constant(arity, c))
    }

    pub fn from_poly(p: Poly) -> Self {
        let arity = p.arity();
        Rf { num: p, div: PoleDivisor::trivial(arity) }
    }

    /// `z_i` (0-based).
    pub fn var(arity: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(arity, i))
    }

    /// `(z_i - z_j)^k` for any integer `k`.
    pub fn linear_pow(arity: usize, i: usize, j: usize, k: i32) -> Self {
        assert!(i != j && i < arity && j < arity);
        if k >= 0 {
            return Self::from_poly(Poly::one(arity).mul_linear_pow(i, j, k as u32));
        }
        let k = (-k) as u32;
        let mut div = PoleDivisor::trivial(arity);
        div.set_pair(i, j, k);
        let c = if i < j { Q::one() } else { sign(k as i64) };
        Rf { num: Poly::constant(arity, c), div }
    }

    /// `z_i^k` for any integer `k`.
    pub fn var_pow(arity: usize, i: usize, k: i32) -> Self {
        if k >= 0 {
            return Self::from_poly(Poly::one(arity).mul_var_pow(i, k));
        }
        let mut div = PoleDivisor::trivial(arity);
        div.axis[i] = (-k) as u32;
        Rf { num: Poly::one(arity), div }
    }

    /// Builds `num / div` and reduces it to canonical form.
    pub fn new(num: Poly, div: PoleDivisor) -> Self {
        assert_eq!(num.arity(), div.arity);
        Self::canonical(num, div)
    }

    fn canonical(mut num: Poly, mut div: PoleDivisor) -> Self {
        let arity = div.arity;
        if num.is_zero() {
            return Self::zero(arity);
        }
        for i in 0..arity {
            let k = div.axis[i];
            if k > 0 {
                let m = num.min_exp(i).unwrap_or(0).max(0) as u32;
                let c = m.min(k);
                if c > 0 {
                    num = num.mul_var_pow(i, -(c as i32));
                    div.axis[i] -= c;
                }
            }
        }
        for i in 0..arity {
            for j in i + 1..arity {
                let mut k = div.pair(i, j);
                while k > 0 {
                    match num.div_linear(i, j) {
                        Some(q) => {
                            num = q;
                            k -= 1;
                        }
                        None => break,
                    }
                }
                div.set_pair(i, j, k);
            }
        }
        Rf { num, div }
    }

    pub fn arity(&self) -> usize {
        self.div.arity
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn divisor(&self) -> &PoleDivisor {
        &self.div
    }

    /// Numerator over the larger divisor `to`, so that `self = result / to`.
    pub fn numerator_over(&self, to: &PoleDivisor) -> Result<Poly> {
        if !self.div.divides(to) {
            return Err(Error::Domain(format!("divisor of {self} does not divide the target")));
        }
        Ok(self.div.lift(&self.num, to))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant value when the function is a pure scalar.
    pub fn as_constant(&self) -> Option<Q> {
        if self.div.is_trivial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn check_arity(&self, other: &Rf) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Rf) -> Result<Rf> {
        self.check_arity(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Rf) -> Rf {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.div == other.div {
            return Self::canonical(self.num.add(&other.num), self.div.clone());
        }
        let l = self.div.lcm(&other.div);
        let a = self.div.lift(&self.num, &l);
        let b = other.div.lift(&other.num, &l);
        Self::canonical(a.add(&b), l)
    }

    pub fn sub(&self, other: &Rf) -> Result<Rf> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Rf {
        Rf { num: self.num.neg(), div: self.div.clone() }
    }

    pub fn scale(&self, c: &Q) -> Rf {
        if c.is_zero() {
            return Rf::zero(self.arity());
        }
        Rf { num: self.num.scale(c), div: self.div.clone() }
    }

    pub fn mul(&self, other: &Rf) -> Result<Rf> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Rf::zero(self.arity()));
        }
        Ok(Self::canonical(self.num.mul(&other.num), self.div.sum(&other.div)))
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<Rf> {
        self.mul(&Rf::from_poly(p.clone()))
    }

    /// Sum of an iterator of functions of the given arity.
    pub fn sum<'a>(arity: usize, items: impl IntoIterator<Item = &'a Rf>) -> Result<Rf> {
        let mut acc = RfSum::new(arity);
        for f in items {
            acc.add_scaled(f, &Q::one())?;
        }
        Ok(acc.finish())
    }

    /// Partial derivative with respect to `z_i` (0-based).
    pub fn derive(&self, i: usize) -> Result<Rf> {
        let n = self.arity();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut acc = Self::canonical(self.num.derive(i), self.div.clone());
        let k = self.div.axis[i];
        if k > 0 {
            let mut d = self.div.clone();
            d.axis[i] += 1;
            acc = acc.add_unchecked(&Self::canonical(self.num.scale(&-Q::from_integer(k.into())), d));
        }
        for j in 0..n {
            if j == i {
                continue;
            }
            let k = self.div.pair(i, j);
            if k > 0 {
                // d/dz_i (z_a - z_b)^{-k} with i = a gives -k (z_a - z_b)^{-k-1}, with i = b gives +k.
                let s = if i < j { -Q::from_integer(k.into()) } else { Q::from_integer(k.into()) };
                let mut d = self.div.clone();
                d.set_pair(i, j, k + 1);
                acc = acc.add_unchecked(&Self::canonical(self.num.scale(&s), d));
            }
        }
        Ok(acc)
    }

    /// Sends variable `k` to `map[k]` in a function of arity `new_arity`.
    /// Non-injective maps merge variables; a merged pair factor in the
    /// divisor is a residual pole.
    pub fn relabel(&self, new_arity: usize, map: &[usize]) -> Result<Rf> {
        let n = self.arity();
        if map.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= new_arity) {
            return Err(Error::IndexOutOfRange { index: bad, arity: new_arity });
        }
        let mut num = self.num.relabel(new_arity, map);
        let mut div = PoleDivisor::trivial(new_arity);
        for i in 0..n {
            div.axis[map[i]] += self.div.axis[i];
        }
        for (i, j, k) in self.div.pair_factors() {
            let (a, b) = (map[i], map[j]);
            if a == b {
                return Err(Error::ResidualPole(format!("(z{}-z{})^{}", i + 1, j + 1, k)));
            }
            if a > b && k % 2 == 1 {
                num = num.neg();
            }
            let cur = div.pair(a, b);
            div.set_pair(a, b, cur + k);
        }
        Ok(Self::canonical(num, div))
    }

    /// `(sigma f)(z_1..z_n) = f(z_{sigma(1)}..z_{sigma(n)})`, with `sigma`
    /// given 0-based as `sigma[i]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Rf> {
        let n = self.arity();
        if sigma.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: sigma.len() });
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || seen[s] {
                return Err(Error::Domain(format!("not a permutation: {sigma:?}")));
            }
            seen[s] = true;
        }
        self.relabel(n, sigma)
    }

    /// Substitutes `z_i -> lambda z_i` for every position variable, tracking
    /// powers of `lambda` in the auxiliary symbol `sym`.
    pub fn scale_vars(&self, sym: AuxSymbol) -> Result<Rf> {
        if self.num.uses_aux(sym) {
            return Err(Error::SymbolCollision(sym.name().to_string()));
        }
        let n = self.arity();
        let dd = self.div.degree() as i32;
        let mut num = Poly::zero(n);
        for (e, c) in self.num.terms() {
            let d: i32 = e[..n].iter().sum();
            let mut e2 = e.clone();
            e2[n + sym.index()] = d - dd;
            num.add_term(e2, c.clone());
        }
        Ok(Rf { num, div: self.div.clone() })
    }

    /// Multiplies by `sym^k`.
    pub fn mul_aux(&self, sym: AuxSymbol, k: i32) -> Rf {
        Rf { num: self.num.mul_aux(sym, k), div: self.div.clone() }
    }

    /// Substitutes `sym = 1`.
    pub fn eval_aux_one(&self, sym: AuxSymbol) -> Rf {
        Self::canonical(self.num.eval_aux_one(sym), self.div.clone())
    }

    pub fn uses_aux(&self, sym: AuxSymbol) -> bool {
        self.num.uses_aux(sym)
    }

    /// Parameter exclusion for a function of `x_1..x_k, y_1..y_n` (arity
    /// `k + n`): for every identified pair `(i, j)` (0-based, `x_i` with
    /// `y_j`) the factors `(x_i - y_j)` are deleted from the numerator and
    /// `y_j := x_i` is substituted. Surviving variables are ordered as the
    /// `x` block followed by the unidentified `y` variables.
    pub fn merge_vars(&self, k: usize, identifications: &[(usize, usize)]) -> Result<Rf> {
        let total = self.arity();
        if k > total {
            return Err(Error::IndexOutOfRange { index: k, arity: total });
        }
        let n = total - k;
        let mut xs = vec![false; k];
        let mut ys = vec![None; n];
        for &(i, j) in identifications {
            if i >= k || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(k + j), arity: total });
            }
            if xs[i] || ys[j].is_some() {
                return Err(Error::Domain("identification pairs are not disjoint".into()));
            }
            xs[i] = true;
            ys[j] = Some(i);
        }
        let mut num = self.num.clone();
        for &(i, j) in identifications {
            while let Some(q) = num.div_linear(i, k + j) {
                if q.is_zero() {
                    break;
                }
                num = q;
            }
            if self.div.pair(i, k + j) > 0 {
                return Err(Error::ResidualPole(format!(
                    "(x{}-y{})^{}",
                    i + 1,
                    j + 1,
                    self.div.pair(i, k + j)
                )));
            }
        }
        let mut map: Vec<usize> = (0..k).collect();
        let mut next = k;
        for slot in ys.iter() {
            match slot {
                Some(i) => map.push(*i),
                None => {
                    map.push(next);
                    next += 1;
                }
            }
        }
        Rf { num, div: self.div.clone() }.relabel(next, &map)
    }

    /// Largest total degree of the function as `z_i -> infinity`.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        let top = self.num.max_exp(i)?;
        let mut d = self.div.axis[i] as i32;
        for j in 0..self.arity() {
            if j != i {
                d += self.div.pair(i, j) as i32;
            }
        }
        Some(top - d)
    }
}

/// Accumulates a sum over a common divisor and reduces only once at the end.
#[derive(Debug, Clone)]
pub struct RfSum {
    num: Poly,
    div: PoleDivisor,
}

impl RfSum {
    pub fn new(arity: usize) -> Self {
        RfSum { num: Poly::zero(arity), div: PoleDivisor::trivial(arity) }
    }

    fn widen(&mut self, div: &PoleDivisor) {
        if !div.divides(&self.div) {
            let l = self.div.lcm(div);
            self.num = self.div.lift(&self.num, &l);
            self.div = l;
        }
    }

    /// Adds `c * f`.
    pub fn add_scaled(&mut self, f: &Rf, c: &Q) -> Result<()> {
        self.add_mul_poly(f, None, c)
    }

    /// Adds `c * f * p`, or `c * f` when `p` is `None`.
    pub fn add_mul_poly(&mut self, f: &Rf, p: Option<&Poly>, c: &Q) -> Result<()> {
        if f.arity() != self.div.arity {
            return Err(Error::ArityMismatch { expected: self.div.arity, found: f.arity() });
        }
        if f.is_zero() || c.is_zero() {
            return Ok(());
        }
        self.widen(&f.div);
        let mut t = f.div.lift(&f.num, &self.div);
        if let Some(p) = p {
            t = t.mul(p);
        }
        self.num.add_assign(&t.scale(c));
        Ok(())
    }

    pub fn finish(self) -> Rf {
        Rf::canonical(self.num, self.div)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut factors = Vec::new();
        for (i, j, k) in self.div.pair_factors() {
            factors.push(format!("(z{}-z{})^-{}", i + 1, j + 1, k));
        }
        for (i, k) in self.div.axis_factors() {
            factors.push(format!("z{}^-{}", i + 1, k));
        }
        let num = self.num.to_string();
        let simple = self.num.len() == 1;
        if factors.is_empty() {
            return write!(f, "{num}");
        }
        match self.num.as_constant() {
            Some(c) if c.is_one() => write!(f, "{}", factors.join(" * ")),
            Some(c) if (-c.clone()).is_one() => write!(f, "-{}", factors.join(" * ")),
            _ if simple => write!(f, "{num} * {}", factors.join(" * ")),
            _ => write!(f, "({num}) * {}", factors.join(" * ")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn z(n: usize, i: usize) -> Rf {
        Rf::var(n, i)
    }

    #[test]
    fn additive_inverse_and_common_denominator() {
        let f = Rf::linear_pow(2, 0, 1, -1);
        assert!(f.add(&f.neg()).unwrap().is_zero());
        let g = Rf::var_pow(2, 0, -1).add(&Rf::var_pow(2, 1, -1)).unwrap();
        let expect = z(2, 0).add(&z(2, 1)).unwrap().mul(&Rf::var_pow(2, 0, -1)).unwrap();
        let expect = expect.mul(&Rf::var_pow(2, 1, -1)).unwrap();
        assert_eq!(g, expect);
        assert_eq!(g.divisor().axis(0), 1);
        assert_eq!(g.divisor().axis(1), 1);
    }

    #[test]
    fn products_cancel_structured_factors() {
        let l = Rf::linear_pow(2, 0, 1, 1);
        let inv = Rf::linear_pow(2, 0, 1, -1);
        assert_eq!(l.mul(&inv).unwrap(), Rf::one(2));
        assert_eq!(inv.mul(&inv).unwrap(), Rf::linear_pow(2, 0, 1, -2));
        assert_eq!(z(2, 0).mul(&Rf::var_pow(2, 0, -1)).unwrap(), Rf::one(2));
    }

    #[test]
    fn derivatives() {
        let inv = Rf::linear_pow(2, 0, 1, -1);
        assert_eq!(inv.derive(0).unwrap(), Rf::linear_pow(2, 0, 1, -2).neg());
        assert!(z(2, 1).derive(0).unwrap().is_zero());
        let sq = Rf::linear_pow(2, 0, 1, -2);
        let t = sq.derive(0).unwrap().add(&sq.derive(1).unwrap()).unwrap();
        assert!(t.is_zero());
        assert!(sq.derive(2).is_err());
    }

    #[test]
    fn scaling_tracks_lambda() {
        let sq = Rf::linear_pow(2, 0, 1, -2);
        assert_eq!(sq.scale_vars(AuxSymbol::Lambda).unwrap(), sq.mul_aux(AuxSymbol::Lambda, -2));
        let zz = z(2, 0).mul(&z(2, 1)).unwrap();
        assert_eq!(zz.scale_vars(AuxSymbol::Lambda).unwrap(), zz.mul_aux(AuxSymbol::Lambda, 2));
        let c = Rf::constant(2, q(5));
        assert_eq!(c.scale_vars(AuxSymbol::Lambda).unwrap(), c);
        let once = sq.scale_vars(AuxSymbol::Lambda).unwrap();
        assert!(matches!(once.scale_vars(AuxSymbol::Lambda), Err(Error::SymbolCollision(_))));
    }

    #[test]
    fn permutation_absorbs_signs() {
        let inv = Rf::linear_pow(2, 0, 1, -1);
        assert_eq!(inv.permute(&[1, 0]).unwrap(), inv.neg());
        let sq = Rf::linear_pow(2, 0, 1, -2);
        assert_eq!(sq.permute(&[1, 0]).unwrap(), sq);
        assert_eq!(sq.permute(&[0, 1]).unwrap(), sq);
    }

    #[test]
    fn merging_variables() {
        let g = z(2, 0).add(&Rf::constant(2, q(3))).unwrap();
        let f = g.mul(&Rf::linear_pow(2, 0, 1, 1)).unwrap();
        let merged = f.merge_vars(1, &[(0, 0)]).unwrap();
        assert_eq!(merged, z(1, 0).add(&Rf::constant(1, q(3))).unwrap());
        assert_eq!(f.merge_vars(1, &[]).unwrap(), f);
        let p = Rf::linear_pow(2, 0, 1, -1);
        assert!(matches!(p.merge_vars(1, &[(0, 0)]), Err(Error::ResidualPole(_))));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Rf::linear_pow(2, 0, 1, -2).to_string(), "(z1-z2)^-2");
        assert_eq!(Rf::linear_pow(2, 0, 1, -2).neg().to_string(), "-(z1-z2)^-2");
        assert_eq!(Rf::zero(3).to_string(), "0");
    }
}
