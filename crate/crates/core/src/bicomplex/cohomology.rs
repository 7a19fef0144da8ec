//! Ranks of the coboundary on finite families of cochains.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{probe_tuples, Cochain, Evaluator, Tag};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ratcalc::{Exponents, Rf};
use crate::scalar::Q;

/// Exact coordinates of several cochains of one arity on a probe grid, in
/// a common coordinate system: per input tuple and dual component, the
/// numerator coefficients over the common divisor.
pub fn flatten(ev: &Evaluator, family: &[Cochain], n: usize, probe: u32) -> Result<Vec<Vec<Q>>> {
    let va = ev.va().clone();
    let mut out = vec![Vec::new(); family.len()];
    for ins in probe_tuples(&va, n, probe) {
        for mu in va.basis_up_to(va.n_max()) {
            let fs: Vec<Rf> = family.iter().map(|c| ev.component(c, &ins, &mu)).collect::<Result<_>>()?;
            append_coordinates(&fs, &mut out)?;
        }
    }
    Ok(out)
}

/// Appends the coordinates of one component of each family member.
pub fn append_coordinates(fs: &[Rf], out: &mut [Vec<Q>]) -> Result<()> {
    let Some(first) = fs.first() else { return Ok(()) };
    let mut lcm = first.divisor().clone();
    for f in fs {
        lcm = lcm.lcm(f.divisor());
    }
    let nums: Vec<BTreeMap<Exponents, Q>> =
        fs.iter().map(|f| f.numerator_over(&lcm).map(|p| p.into_terms())).collect::<Result<_>>()?;
    let keys: BTreeSet<&Exponents> = nums.iter().flat_map(|m| m.keys()).collect();
    for (slot, m) in out.iter_mut().zip(&nums) {
        for k in &keys {
            slot.push(m.get(*k).cloned().unwrap_or_else(Q::zero));
        }
    }
    Ok(())
}

pub(crate) fn columns(vectors: &[Vec<Q>]) -> Matrix {
    let rows = vectors.first().map_or(0, Vec::len);
    let mut m = Matrix::zeros(rows, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                m.set(i, j, x.clone());
            }
        }
    }
    m
}

/// Family-relative cohomology data for `δ^n_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub rank_delta: usize,
    pub dim_kernel: usize,
    pub dim_cohomology: usize,
}

/// Splits `family` by tag into members of `C^n_m` and `C^{n-1}_{m+1}`,
/// evaluates on the probe grid, and returns the rank of `δ` on the span of
/// the `C^n_m` members, the dimension of its kernel there, and that
/// kernel's dimension modulo the `δ`-images of the `C^{n-1}_{m+1}` members.
/// All numbers are relative to the family.
pub fn cohomology_dim(ev: &Evaluator, family: &[Cochain], n: usize, m: u32, probe: u32) -> Result<CohomologyReport> {
    let here = Tag::whole(n, m);
    let below = (n > 0).then(|| Tag::whole(n - 1, m + 1));
    let mut top = Vec::new();
    let mut low = Vec::new();
    for c in family {
        if c.tag() == here {
            top.push(c.clone());
        } else if Some(c.tag()) == below {
            low.push(c.clone());
        } else {
            return Err(Error::InconsistentTags(format!("{} in a family for {here}", c.tag())));
        }
    }
    if top.is_empty() {
        return Ok(CohomologyReport { rank_delta: 0, dim_kernel: 0, dim_cohomology: 0 });
    }
    let deltas: Vec<Cochain> = top.iter().map(Cochain::delta).collect::<Result<_>>()?;
    let d = columns(&flatten(ev, &deltas, n + 1, probe)?);
    let e_vecs = flatten(ev, &[top.clone(), low.iter().map(Cochain::delta).collect::<Result<Vec<_>>>()?].concat(), n, probe)?;
    let (e_top, e_img) = e_vecs.split_at(top.len());
    let rank_delta = d.rank();
    let kernel: Vec<Vec<Q>> = d
        .nullspace()
        .iter()
        .map(|c| {
            let len = e_top[0].len();
            (0..len).map(|i| e_top.iter().zip(c).map(|(v, x)| &v[i] * x).sum()).collect()
        })
        .collect();
    let k = columns(&kernel).rank();
    let img = columns(e_img).rank();
    let both = columns(&[kernel, e_img.to_vec()].concat()).rank();
    let intersection = k + img - both;
    Ok(CohomologyReport { rank_delta, dim_kernel: k, dim_cohomology: k - intersection })
}
