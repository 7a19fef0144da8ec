//! Reconstruction of rational functions from one-variable expansions.
//!
//! Both primitives multiply the expansion by an a priori denominator `D`
//! built from pole bounds, read off the polynomial numerator, and certify
//! it by checking that a margin of coefficients outside the admissible
//! degree range vanishes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ratcalc::{Poly, Rf, RfSum};
use crate::scalar::Q;
use num_traits::One;
use crate::voa::{Heisenberg, Partition};

/// Left insertion `<mu, Y(v, z_1) F(z_2, ..)>` of a vertex operator in
/// front of a W-bar valued function `F` given componentwise.
#[derive(Debug, Clone)]
pub struct InsertSpec<'a> {
    pub v: &'a Partition,
    pub mu: &'a Partition,
    /// Arity of `F`; the result has one more variable, placed first.
    pub inner_arity: usize,
    /// Largest weight at which `F` has nonzero components, if finite.
    pub support: Option<u32>,
    /// Pole bound of `(z_1 - z_{j+2})` for every variable of `F`.
    pub pair_bounds: Vec<u32>,
    /// Pole bound at `z_1 = 0`.
    pub zero_bound: u32,
}

/// Composition `sum_p eval(v(p) u) (z_t - z_c)^{-p-1}` around a center
/// variable `z_c`.
#[derive(Debug, Clone)]
pub struct ComposeSpec<'a> {
    pub v: &'a Partition,
    pub u: &'a Partition,
    pub arity: usize,
    pub t: usize,
    pub c: usize,
    /// Pole bound of `(z_t - z_j)` for each `j` (entries at `t` ignored).
    pub pair_bounds: Vec<u32>,
    pub zero_bound: u32,
    /// Upper bound for the degree of the result as `z_t -> infinity`.
    pub degree_bound: i64,
}

pub fn insert_left(
    va: &Heisenberg,
    margin: i64,
    spec: &InsertSpec<'_>,
    inner: &dyn Fn(&Partition) -> Result<Rf>,
) -> Result<Rf> {
    let n = spec.inner_arity + 1;
    let embed: Vec<usize> = (1..n).collect();
    let h = spec.v.weight() as i64;
    let d = spec.mu.weight() as i64;
    let e_top = d - h;
    let series_coeff = |e: i64| -> Result<Rf> {
        let q = d - h - e;
        if q < 0 || spec.support.is_some_and(|s| q > s as i64) {
            return Ok(Rf::zero(n));
        }
        let p = -e - 1;
        let dual = va.dual_mode_basis(spec.v, p, spec.mu);
        let mut acc = RfSum::new(n);
        for (b, c) in dual.terms() {
            let f = inner(b)?;
            if f.is_zero() {
                continue;
            }
            acc.add_scaled(&f.relabel(n, &embed)?, c)?;
        }
        Ok(acc.finish())
    };
    if let Some(s) = spec.support {
        let mut acc = RfSum::new(n);
        for q in 0..=s as i64 {
            let e = d - h - q;
            let c = series_coeff(e)?;
            acc.add_scaled(&c.mul(&Rf::var_pow(n, 0, e as i32))?, &Q::one())?;
        }
        return Ok(acc.finish());
    }
    let mut dpoly = Poly::one(n).mul_var_pow(0, spec.zero_bound as i32);
    for (j, &b) in spec.pair_bounds.iter().enumerate() {
        dpoly = dpoly.mul_linear_pow(0, j + 1, b);
    }
    let deg_d = spec.zero_bound as i64 + spec.pair_bounds.iter().map(|&b| b as i64).sum::<i64>();
    let dk = dpoly.coefficients_in(0);
    let mut cache: BTreeMap<i64, Rf> = BTreeMap::new();
    let mut g = |e_big: i64| -> Result<Rf> {
        let mut acc = RfSum::new(n);
        for (&k, dkp) in &dk {
            let idx = e_big - k as i64;
            if idx > e_top {
                continue;
            }
            if !cache.contains_key(&idx) {
                cache.insert(idx, series_coeff(idx)?);
            }
            acc.add_mul_poly(&cache[&idx], Some(dkp), &Q::one())?;
        }
        Ok(acc.finish())
    };
    for e_big in -margin..0 {
        let ge = g(e_big)?;
        if !ge.is_zero() {
            return Err(Error::Reconstruction(format!(
                "left insertion of {} at {}: coefficient of z1^{e_big} after clearing poles is {ge}",
                spec.v, spec.mu
            )));
        }
    }
    let mut num = RfSum::new(n);
    for e_big in 0..=e_top + deg_d {
        let ge = g(e_big)?;
        num.add_mul_poly(&ge, Some(&Poly::one(n).mul_var_pow(0, e_big as i32)), &Q::one())?;
    }
    num.finish().mul(&denominator(n, 0, None, &spec.pair_bounds_full(), spec.zero_bound))
}

impl InsertSpec<'_> {
    fn pair_bounds_full(&self) -> Vec<u32> {
        let mut v = vec![0];
        v.extend(&self.pair_bounds);
        v
    }
}

/// `prod_j (z_t - z_j)^{-b_j} z_t^{-zero}` (entry `t` of `bounds` ignored),
/// times `(z_t - z_c)^{-bc}` when `center = Some((c, bc))` overrides entry `c`.
fn denominator(n: usize, t: usize, center: Option<(usize, u32)>, bounds: &[u32], zero: u32) -> Rf {
    let mut f = Rf::var_pow(n, t, -(zero as i32));
    for (j, &b) in bounds.iter().enumerate() {
        let b = match center {
            Some((c, bc)) if c == j => bc,
            _ => b,
        };
        if j != t && b > 0 {
            f = f.mul(&Rf::linear_pow(n, t, j, -(b as i32))).expect("same arity");
        }
    }
    f
}

pub fn compose_at(
    va: &Heisenberg,
    margin: i64,
    spec: &ComposeSpec<'_>,
    eval: &dyn Fn(&Partition) -> Result<Rf>,
) -> Result<Rf> {
    let n = spec.arity;
    let (t, c) = (spec.t, spec.c);
    let ope = va.ope_order(spec.v, spec.u) as i64;
    let e_lo = -ope;
    let bc = spec.pair_bounds[c];
    if ope > bc as i64 {
        return Err(Error::Reconstruction(format!(
            "pole bound {bc} below the order {ope} of {} against {}",
            spec.v, spec.u
        )));
    }
    let series_coeff = |e: i64| -> Result<Rf> {
        let p = -e - 1;
        let img = va.mode_basis(spec.v, p, spec.u);
        let mut acc = RfSum::new(n);
        for (b, coef) in img.terms() {
            acc.add_scaled(&eval(b)?, coef)?;
        }
        Ok(acc.finish())
    };
    // D as a polynomial in x = z_t - z_c, with x stored in slot t.
    let shifted = |j: Option<usize>| -> Poly {
        // x + z_c - z_j (or x + z_c for the origin)
        let mut p = Poly::var(n, t).add(&Poly::var(n, c));
        if let Some(j) = j {
            p = p.sub(&Poly::var(n, j));
        }
        p
    };
    let mut dpoly = Poly::one(n).mul_var_pow(t, bc as i32);
    let mut deg_d = bc as i64;
    for (j, &b) in spec.pair_bounds.iter().enumerate() {
        if j == t || j == c || b == 0 {
            continue;
        }
        let f = shifted(Some(j));
        for _ in 0..b {
            dpoly = dpoly.mul(&f);
        }
        deg_d += b as i64;
    }
    let f0 = shifted(None);
    for _ in 0..spec.zero_bound {
        dpoly = dpoly.mul(&f0);
    }
    deg_d += spec.zero_bound as i64;
    let dk = dpoly.coefficients_in(t);
    let deg_g = spec.degree_bound + deg_d;
    let mut cache: BTreeMap<i64, Rf> = BTreeMap::new();
    let mut g = |e_big: i64| -> Result<Rf> {
        let mut acc = RfSum::new(n);
        for (&k, dkp) in &dk {
            let idx = e_big - k as i64;
            if idx < e_lo {
                continue;
            }
            if !cache.contains_key(&idx) {
                cache.insert(idx, series_coeff(idx)?);
            }
            acc.add_mul_poly(&cache[&idx], Some(dkp), &Q::one())?;
        }
        Ok(acc.finish())
    };
    let lowest = e_lo + bc as i64;
    let mut num = RfSum::new(n);
    for e_big in lowest.min(0)..=deg_g + margin {
        let ge = g(e_big)?;
        if ge.is_zero() {
            continue;
        }
        if e_big < 0 || e_big > deg_g {
            return Err(Error::Reconstruction(format!(
                "composition of {} with {}: stray coefficient of x^{e_big} (admissible 0..={deg_g}): {ge}",
                spec.v, spec.u
            )));
        }
        num.add_mul_poly(&ge, Some(&Poly::one(n).mul_linear_pow(t, c, e_big as u32)), &Q::one())?;
    }
    num.finish().mul(&denominator(n, t, Some((c, bc)), &spec.pair_bounds, spec.zero_bound))
}
