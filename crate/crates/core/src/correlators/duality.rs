//! Three-region duality check: the two orderings of a product of vertex
//! operators and the iterate expand one common rational function.

use std::fmt;

use super::Correlators;
use crate::error::{Error, Result};
use crate::ratcalc::{Exponents, Rf, Series, AUX_COUNT};
use crate::scalar::fmt_q;
use crate::voa::{Partition, Vector};

/// One region's comparison for one dual component.
#[derive(Debug, Clone)]
pub struct RegionReport {
    pub region: &'static str,
    /// Mode-sum expansion restricted to the certified window.
    pub series: Series,
    /// First differing monomial: exponents, mode-sum value, expansion value.
    pub mismatch: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub order: usize,
    pub components: Vec<(Partition, Rf, Vec<RegionReport>)>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|(_, _, rs)| rs.iter().all(|r| r.mismatch.is_none()))
    }

    pub fn first_failure(&self) -> Option<String> {
        self.components.iter().find_map(|(mu, _, rs)| {
            rs.iter().find_map(|r| r.mismatch.as_ref().map(|m| format!("<{mu}'> {}: {m}", r.region)))
        })
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mu, rf, regions) in &self.components {
            writeln!(f, "component <{mu}'>: {rf}")?;
            for r in regions {
                let status = match &r.mismatch {
                    None => "agree".to_string(),
                    Some(m) => format!("DIFFER {m}"),
                };
                writeln!(f, "  {:<9} {status}: {}", r.region, r.series)?;
            }
        }
        Ok(())
    }
}

fn mono(e1: i64, e2: i64) -> Exponents {
    let mut e = vec![0; 2 + AUX_COUNT];
    e[0] = e1 as i32;
    e[1] = e2 as i32;
    e
}

fn compare(region: &'static str, modes: Series, expansion: &Series, window: impl Fn(&[i32]) -> bool) -> RegionReport {
    let modes = modes.filter(&window);
    let mismatch = modes.first_difference(expansion, &window).map(|(e, a, b)| {
        format!("at z-exponents ({}, {}): modes {} vs function {}", e[0], e[1], fmt_q(&a), fmt_q(&b))
    });
    RegionReport { region, series: modes, mismatch }
}

impl Correlators {
    /// Compares `<mu, Y(u1,z1)Y(u2,z2)v>`, `<mu, Y(u2,z2)Y(u1,z1)v>` and
    /// `<mu, Y(Y(u1,z1-z2)u2,z2)v>` with the expansions of the
    /// reconstructed function through geometric depth `k`, for every dual
    /// component up to the cutoff.
    pub fn duality_check(&self, u1: &Vector, u2: &Vector, v: &Vector, k: usize) -> Result<DualityReport> {
        let weight = |x: &Vector, name: &str| {
            x.weight().ok_or_else(|| Error::Domain(format!("duality check needs homogeneous nonzero {name}")))
        };
        let (w1, w2, wv) = (weight(u1, "u1")? as i64, weight(u2, "u2")? as i64, weight(v, "v")? as i64);
        let va = self.va().clone();
        let map = self.e_map_w(&[u1.clone(), u2.clone()], v)?;
        let mut components = Vec::new();
        for mu in va.basis_up_to(va.n_max()) {
            let f = map.get(&mu);
            let dm = mu.weight() as i64;
            let mut regions = Vec::new();

            // |z1| > |z2|
            let exp = f.expand(&[0, 1], k)?;
            let top = exp.exact_below - 1;
            let mut s = Series::new(2);
            for e2 in -(w2 + wv)..=top {
                let x = va.mode(u2, -e2 - 1, v);
                if x.is_zero() {
                    continue;
                }
                let wx = w2 + wv + e2;
                let e1 = dm - w1 - wx;
                s.add_term(mono(e1, e2), va.mode(u1, -e1 - 1, &x).coeff(&mu));
            }
            regions.push(compare("z1>z2", s, &exp.series, |e| (e[1] as i64) <= top));

            // |z2| > |z1|
            let exp = f.expand(&[1, 0], k)?;
            let top = exp.exact_below - 1;
            let mut s = Series::new(2);
            for e1 in -(w1 + wv)..=top {
                let y = va.mode(u1, -e1 - 1, v);
                if y.is_zero() {
                    continue;
                }
                let wy = w1 + wv + e1;
                let e2 = dm - w2 - wy;
                s.add_term(mono(e1, e2), va.mode(u2, -e2 - 1, &y).coeff(&mu));
            }
            regions.push(compare("z2>z1", s, &exp.series, |e| (e[0] as i64) <= top));

            // |z2| > |z1 - z2|
            let exp = f.expand_iterate(k)?;
            let top = exp.exact_below - 1;
            let mut s = Series::new(2);
            for ex in -(w1 + w2)..=top {
                let y = va.mode(u1, -ex - 1, u2);
                if y.is_zero() {
                    continue;
                }
                let wy = w1 + w2 + ex;
                let ez = dm - wy - wv;
                s.add_term(mono(ex, ez), va.mode(&y, -ez - 1, v).coeff(&mu));
            }
            regions.push(compare("iterate", s, &exp.series, |e| (e[0] as i64) <= top));

            components.push((mu, f, regions));
        }
        Ok(DualityReport { order: k, components })
    }
}
