//! Truncated Laurent expansions of rational functions in ordered regions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{Exponents, Poly, Rf, AUX_COUNT};
use crate::error::{Error, Result};
use crate::scalar::{binomial, sign, Q};

/// Finite table of Laurent monomials (position and auxiliary exponents).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Series {
    arity: usize,
    terms: BTreeMap<Exponents, Q>,
}

/// A region expansion together with the range in which it is exact: every
/// monomial `m` with `filtration(m) < exact_below` has its full coefficient.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub series: Series,
    pub exact_below: i64,
}

impl Series {
    pub fn new(arity: usize) -> Self {
        Series { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
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
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, e: &[i32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn mul(&self, other: &Series) -> Series {
        let mut out = Series::new(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }

    /// Keeps the monomials accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&[i32]) -> bool) -> Series {
        Series {
            arity: self.arity,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// First monomial whose coefficients differ, among those accepted by `keep`.
    pub fn first_difference(&self, other: &Series, keep: impl Fn(&[i32]) -> bool) -> Option<(Exponents, Q, Q)> {
        let mut keys: Vec<&Exponents> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|e| keep(e))
            .find(|e| self.coeff(e) != other.coeff(e))
            .map(|e| (e.clone(), self.coeff(e), other.coeff(e)))
    }

    fn from_poly(p: &Poly) -> Series {
        let mut s = Series::new(p.arity());
        for (e, c) in p.terms() {
            s.add_term(e.clone(), c.clone());
        }
        s
    }
}

/// Filtration used for exactness windows of an ordered expansion: the sum
/// over tail positions `j >= 2` of the total exponent of the variables in
/// positions `j..n` of `ordering`.
pub fn region_filtration(e: &[i32], ordering: &[usize]) -> i64 {
    let mut tail = 0i64;
    let mut total = 0i64;
    for &v in ordering.iter().skip(1).rev() {
        tail += e[v] as i64;
        total += tail;
    }
    total
}

impl Rf {
    /// Expands in the region `|z_{o(1)}| > ... > |z_{o(n)}|` (`ordering`
    /// lists 0-based variables from largest to smallest), keeping all terms
    /// of total geometric depth below `k`.
    pub fn expand(&self, ordering: &[usize], k: usize) -> Result<Expansion> {
        let n = self.arity();
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in ordering.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::Domain(format!("bad region ordering {ordering:?}")));
            }
            pos[v] = p;
        }
        if ordering.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: ordering.len() });
        }
        let width = n + AUX_COUNT;
        let mut base = Series::from_poly(self.numerator());
        let mut shift = vec![0i32; width];
        for (i, a) in self.divisor().axis_factors() {
            shift[i] -= a as i32;
        }
        let mut factors: Vec<Vec<Series>> = Vec::new();
        for (i, j, m) in self.divisor().pair_factors() {
            let (big, small, s) = if pos[i] < pos[j] { (i, j, crate::scalar::q(1)) } else { (j, i, sign(m as i64)) };
            shift[big] -= m as i32;
            // (z_big - z_small)^{-m} = z_big^{-m} sum_l binom(m+l-1, l) (z_small/z_big)^l
            let mut layers = Vec::new();
            for l in 0..k {
                let mut e = vec![0i32; width];
                e[big] = -(l as i32);
                e[small] = l as i32;
                let mut t = Series::new(n);
                t.add_term(e, &s * binomial((m as i64) + l as i64 - 1, l as i64));
                layers.push(t);
            }
            factors.push(layers);
        }
        let shifted: Series = {
            let mut s = Series::new(n);
            for (e, c) in base.terms.iter() {
                s.add_term(e.iter().zip(&shift).map(|(a, b)| a + b).collect(), c.clone());
            }
            s
        };
        base = shifted;
        let min_base = base.terms.keys().map(|e| region_filtration(e, ordering)).min().unwrap_or(0);
        let mut by_depth: Vec<Series> = vec![Series::new(n); k.max(1)];
        by_depth[0] = base;
        for layers in &factors {
            let mut next = vec![Series::new(n); k.max(1)];
            for (d, acc) in by_depth.iter().enumerate() {
                if acc.is_zero() {
                    continue;
                }
                for (l, layer) in layers.iter().enumerate() {
                    if d + l >= k {
                        break;
                    }
                    let prod = acc.mul(layer);
                    for (e, c) in prod.terms {
                        next[d + l].add_term(e, c);
                    }
                }
            }
            by_depth = next;
        }
        let mut series = Series::new(n);
        if k > 0 {
            for s in by_depth {
                for (e, c) in s.terms {
                    series.add_term(e, c);
                }
            }
        }
        Ok(Expansion { series, exact_below: min_base + k as i64 })
    }

    /// Expands a two-point function in the iterate region
    /// `|z_2| > |z_1 - z_2| > 0`, returning a series in `(x, z_2)` with
    /// `x = z_1 - z_2` as the first variable. Exactness refers to the
    /// exponent of `x`.
    pub fn expand_iterate(&self, k: usize) -> Result<Expansion> {
        if self.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: self.arity() });
        }
        let width = 2 + AUX_COUNT;
        // numerator: z1^a z2^b -> (x + z2)^a z2^b
        let mut base = Series::new(2);
        for (e, c) in self.numerator().terms() {
            let a = e[0];
            for t in 0..=a {
                let mut e2 = e.clone();
                e2[0] = t;
                e2[1] = e[1] + a - t;
                base.add_term(e2, c * binomial(a as i64, t as i64));
            }
        }
        let d = self.divisor();
        let mut shift = vec![0i32; width];
        shift[0] -= d.pair(0, 1) as i32;
        shift[1] -= d.axis(1) as i32;
        let a1 = d.axis(0);
        shift[1] -= a1 as i32;
        let mut shifted = Series::new(2);
        for (e, c) in base.terms {
            shifted.add_term(e.iter().zip(&shift).map(|(a, b)| a + b).collect(), c);
        }
        let min_base = shifted.terms.keys().map(|e| e[0] as i64).min().unwrap_or(0);
        // z1^{-a1} = z2^{-a1} sum_l binom(-a1, l) (x/z2)^l
        let mut out = Series::new(2);
        let layers = if a1 == 0 { 1 } else { k };
        for l in 0..layers.min(k) {
            let mut e = vec![0i32; width];
            e[0] = l as i32;
            e[1] = -(l as i32);
            let mut t = Series::new(2);
            t.add_term(e, binomial(-(a1 as i64), l as i64));
            for (e2, c) in shifted.mul(&t).terms {
                out.add_term(e2, c);
            }
        }
        Ok(Expansion { series: out, exact_below: min_base + k as i64 })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", crate::scalar::fmt_q(c))?;
            for (i, &x) in e[..self.arity].iter().enumerate() {
                if x != 0 {
                    write!(f, "*z{}^{}", i + 1, x)?;
                }
            }
            for sym in super::AuxSymbol::ALL {
                let x = e[self.arity + sym.index()];
                if x != 0 {
                    write!(f, "*{}^{}", sym.name(), x)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn mono(e: [i32; 2], c: i64) -> (Exponents, Q) {
        let mut v = vec![0; 2 + AUX_COUNT];
        v[0] = e[0];
        v[1] = e[1];
        (v, q(c))
    }

    #[test]
    fn geometric_expansions() {
        let f = Rf::linear_pow(2, 0, 1, -1);
        let s = f.expand(&[0, 1], 3).unwrap().series;
        let want: BTreeMap<_, _> = [mono([-1, 0], 1), mono([-2, 1], 1), mono([-3, 2], 1)].into_iter().collect();
        assert_eq!(s.terms, want);
        let s = f.expand(&[1, 0], 3).unwrap().series;
        let want: BTreeMap<_, _> = [mono([0, -1], -1), mono([1, -2], -1), mono([2, -3], -1)].into_iter().collect();
        assert_eq!(s.terms, want);
    }

    #[test]
    fn polynomial_is_unchanged() {
        let p = Rf::var(2, 0).mul(&Rf::var(2, 1)).unwrap().add(&Rf::one(2)).unwrap();
        let s = p.expand(&[0, 1], 2).unwrap().series;
        assert_eq!(s, Series::from_poly(p.numerator()));
    }

    #[test]
    fn iterate_region() {
        // 1/z1 = 1/(z2 + x) = z2^-1 - x z2^-2 + ...
        let f = Rf::var_pow(2, 0, -1);
        let s = f.expand_iterate(3).unwrap().series;
        assert_eq!(s.coeff(&mono([0, -1], 0).0), q(1));
        assert_eq!(s.coeff(&mono([1, -2], 0).0), q(-1));
        assert_eq!(s.coeff(&mono([2, -3], 0).0), q(1));
    }
}
