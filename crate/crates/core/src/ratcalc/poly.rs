//! Sparse multivariate polynomials in `z_1..z_n` with extra commuting
//! auxiliary symbols carrying integer exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{binomial, Q};

/// Formal symbols tracked alongside the position variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxSymbol {
    Epsilon,
    Lambda,
    Zeta1,
    Zeta2,
}

pub const AUX_COUNT: usize = 4;

impl AuxSymbol {
    pub const ALL: [AuxSymbol; AUX_COUNT] =
        [AuxSymbol::Epsilon, AuxSymbol::Lambda, AuxSymbol::Zeta1, AuxSymbol::Zeta2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            AuxSymbol::Epsilon => "eps",
            AuxSymbol::Lambda => "lam",
            AuxSymbol::Zeta1 => "zeta1",
            AuxSymbol::Zeta2 => "zeta2",
        }
    }

    pub fn from_name(s: &str) -> Option<AuxSymbol> {
        AuxSymbol::ALL.into_iter().find(|a| a.name() == s)
    }
}

/// Exponent vector: `arity` position exponents followed by `AUX_COUNT`
/// auxiliary exponents.
pub type Exponents = Vec<i32>;

/// Sparse polynomial; position exponents are nonnegative, auxiliary
/// exponents are arbitrary integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Q) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity + AUX_COUNT], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Q::one())
    }

    /// The monomial `z_i` (0-based index).
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity + AUX_COUNT];
        e[i] = 1;
        let mut p = Self::zero(arity);
        p.add_term(e, Q::one());
        p
    }

    /// The monomial `sym^k`.
    pub fn aux(arity: usize, sym: AuxSymbol, k: i32) -> Self {
        let mut e = vec![0; arity + AUX_COUNT];
        e[arity + sym.index()] = k;
        let mut p = Self::zero(arity);
        p.add_term(e, Q::one());
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity + AUX_COUNT, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Q> {
        self.terms
    }

    /// Returns the constant value if the polynomial has no variable or
    /// auxiliary dependence.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                crate::scalar::qadd_assign(o.get_mut(), c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        debug_assert_eq!(self.arity, other.arity);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.arity);
        }
        if s.is_one() {
            return self.clone();
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), crate::scalar::qmul(c, s))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.arity, other.arity);
        let mut r = Poly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, crate::scalar::qmul(ca, cb));
            }
        }
        r
    }

    /// Multiplies by the monomial with exponent shift `shift`.
    pub fn shift(&self, shift: &[i32]) -> Poly {
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_var_pow(&self, i: usize, k: i32) -> Poly {
        let mut s = vec![0; self.arity + AUX_COUNT];
        s[i] = k;
        self.shift(&s)
    }

    pub fn mul_aux(&self, sym: AuxSymbol, k: i32) -> Poly {
        let mut s = vec![0; self.arity + AUX_COUNT];
        s[self.arity + sym.index()] = k;
        self.shift(&s)
    }

    /// `self * (z_i - z_j)`.
    pub fn mul_linear(&self, i: usize, j: usize) -> Poly {
        let mut r = self.mul_var_pow(i, 1);
        r.add_assign(&self.mul_var_pow(j, 1).neg());
        r
    }

    /// `self * (z_i - z_j)^k`, by binomial expansion.
    pub fn mul_linear_pow(&self, i: usize, j: usize, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let mut r = Poly::zero(self.arity);
        for a in 0..=k {
            let c = binomial(k as i64, a as i64) * crate::scalar::sign((k - a) as i64);
            let mut s = vec![0; self.arity + AUX_COUNT];
            s[i] = a as i32;
            s[j] = (k - a) as i32;
            r.add_assign(&self.shift(&s).scale(&c));
        }
        r
    }

    /// Smallest exponent of `z_i` over all terms.
    pub fn min_exp(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn max_exp(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Exact division by `(z_i - z_j)` if it divides.
    pub fn div_linear(&self, i: usize, j: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut by_deg: BTreeMap<i32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[i];
            e2[i] = 0;
            by_deg.entry(d).or_insert_with(|| Poly::zero(self.arity)).add_term(e2, c.clone());
        }
        let top = *by_deg.keys().next_back().unwrap();
        if top == 0 {
            return None;
        }
        // Synthetic division in z_i over the remaining variables.
        let mut quot: Vec<Poly> = vec![Poly::zero(self.arity); top as usize];
        let mut carry = Poly::zero(self.arity);
        for k in (1..=top).rev() {
            let mut q = by_deg.remove(&k).unwrap_or_else(|| Poly::zero(self.arity));
            q.add_assign(&carry);
            carry = q.mul_var_pow(j, 1);
            quot[(k - 1) as usize] = q;
        }
        let mut rem = by_deg.remove(&0).unwrap_or_else(|| Poly::zero(self.arity));
        rem.add_assign(&carry);
        if !rem.is_zero() {
            return None;
        }
        let mut r = Poly::zero(self.arity);
        for (k, q) in quot.into_iter().enumerate() {
            r.add_assign(&q.mul_var_pow(i, k as i32));
        }
        Some(r)
    }

    pub fn derive(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * Q::from_integer(e[i].into()));
            }
        }
        r
    }

    /// Sends variable `k` to variable `map[k]` of a polynomial of arity
    /// `new_arity`; collisions multiply the variables together.
    pub fn relabel(&self, new_arity: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.arity);
        let mut r = Poly::zero(new_arity);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_arity + AUX_COUNT];
            for (k, &t) in map.iter().enumerate() {
                e2[t] += e[k];
            }
            e2[new_arity..].copy_from_slice(&e[self.arity..]);
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Substitutes `sym = 1`.
    pub fn eval_aux_one(&self, sym: AuxSymbol) -> Poly {
        let idx = self.arity + sym.index();
        let mut r = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[idx] = 0;
            r.add_term(e2, c.clone());
        }
        r
    }

    pub fn uses_aux(&self, sym: AuxSymbol) -> bool {
        let idx = self.arity + sym.index();
        self.terms.keys().any(|e| e[idx] != 0)
    }

    /// Splits the polynomial by the exponent of `z_i`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[i];
            e2[i] = 0;
            out.entry(d).or_insert_with(|| Poly::zero(self.arity)).add_term(e2, c.clone());
        }
        out
    }
}

fn fmt_monomial(arity: usize, e: &[i32], out: &mut Vec<String>) {
    for (k, &x) in e[..arity].iter().enumerate() {
        match x {
            0 => {}
            1 => out.push(format!("z{}", k + 1)),
            _ => out.push(format!("z{}^{}", k + 1, x)),
        }
    }
    for sym in AuxSymbol::ALL {
        match e[arity + sym.index()] {
            0 => {}
            1 => out.push(sym.name().to_string()),
            x => out.push(format!("{}^{}", sym.name(), x)),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut parts = Vec::new();
            fmt_monomial(self.arity, e, &mut parts);
            let neg = crate::scalar::is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            let sep = match (idx, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}")?;
            if parts.is_empty() {
                write!(f, "{}", crate::scalar::fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{}*{}", crate::scalar::fmt_q(&abs), parts.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn linear_division_round_trip() {
        let p = Poly::var(3, 0).mul(&Poly::var(3, 2)).add(&Poly::one(3));
        let m = p.mul_linear(0, 1).mul_linear(0, 1);
        let d = m.div_linear(0, 1).unwrap().div_linear(0, 1).unwrap();
        assert_eq!(d, p);
        assert!(p.div_linear(0, 1).is_none());
        assert_eq!(p.mul_linear_pow(1, 2, 3), p.mul_linear(1, 2).mul_linear(1, 2).mul_linear(1, 2));
    }

    #[test]
    fn relabel_merges_variables() {
        let p = Poly::var(2, 0).mul(&Poly::var(2, 1));
        let r = p.relabel(1, &[0, 0]);
        let mut e = vec![0; 1 + AUX_COUNT];
        e[0] = 2;
        assert_eq!(r, Poly::from_terms(1, [(e, q(1))]));
    }
}
