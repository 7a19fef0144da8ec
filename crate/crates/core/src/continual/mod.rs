//! Continual Lie algebra presentations over a finite-dimensional base
//! algebra, their consistency conditions, and the algebra models extracted
//! from bicomplex relation chains.

mod model;
mod text;

use num_traits::Zero;

use crate::bicomplex::CheckReport;
use crate::error::{Error, Result};
use crate::scalar::{q, Q};

pub use model::{
    build_from_bicomplex, c2half_scenario, jacobi_residual, registered_triples, shortseq_scenario, verify_jacobi,
    BicomplexAlgebraModel, ScenarioConfig, ScenarioReport,
};

/// Element of a base algebra in coordinates of its basis.
pub type Elem = Vec<Q>;

/// Bilinear map on a basis of dimension `dim`, stored per basis pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    dim: usize,
    table: Vec<Vec<Elem>>,
}

impl BilinearMap {
    pub fn zero(dim: usize) -> Self {
        BilinearMap { dim, table: vec![vec![vec![Q::zero(); dim]; dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.table[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Elem) -> Result<()> {
        if i >= self.dim || j >= self.dim || value.len() != self.dim {
            return Err(Error::Domain(format!("entry ({i}, {j}) outside a table of dimension {}", self.dim)));
        }
        self.table[i][j] = value;
        Ok(())
    }

    /// `B(x, y)` extended bilinearly.
    pub fn apply(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi * yj;
                for (o, e) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &c * e;
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let table = self.table.iter().map(|row| row.iter().map(|e| e.iter().map(|x| x * c).collect()).collect()).collect();
        BilinearMap { dim: self.dim, table }
    }
}

/// Finite-dimensional base algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAlgebra {
    pub labels: Vec<String>,
    pub product: BilinearMap,
}

impl BaseAlgebra {
    pub fn new(labels: Vec<String>, product: BilinearMap) -> Result<Self> {
        if labels.len() != product.dim() {
            return Err(Error::Domain(format!("{} labels for a product of dimension {}", labels.len(), product.dim())));
        }
        Ok(BaseAlgebra { labels, product })
    }

    /// Functions on `points` points, with the delta functions as basis.
    pub fn functions_on_points(points: usize) -> Self {
        let mut product = BilinearMap::zero(points);
        for i in 0..points {
            product.table[i][i] = unit(points, i);
        }
        BaseAlgebra { labels: (1..=points).map(|i| format!("e{i}")).collect(), product }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.product.apply(x, y)
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples.
    pub fn check_associative(&self) -> CheckReport {
        let mut rep = CheckReport::new("base algebra associativity");
        let d = self.dim();
        for (i, j, k) in triples(d) {
            let (x, y, z) = (unit(d, i), unit(d, j), unit(d, k));
            rep.checked += 1;
            if self.mul(&self.mul(&x, &y), &z) != self.mul(&x, &self.mul(&y, &z)) {
                rep.fail(format!("triple ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]));
                break;
            }
        }
        rep
    }

    pub fn show(&self, x: &Elem) -> String {
        let terms: Vec<String> = x
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{} {l}", crate::scalar::fmt_q(c)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub fn unit(dim: usize, i: usize) -> Elem {
    let mut e = vec![Q::zero(); dim];
    e[i] = q(1);
    e
}

fn triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
}

/// The maps `K_0`, `K_+`, `K_-`, `K_{0,0}` defining the brackets
/// `[X_0(φ), X_0(ψ)] = X_0(K_{0,0}(φ, ψ))`,
/// `[X_0(φ), X_{±1}(ψ)] = X_{±1}(K_±(φ, ψ))` and
/// `[X_{+1}(φ), X_{-1}(ψ)] = X_0(K_0(φ, ψ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinualPresentation {
    pub base: BaseAlgebra,
    pub k0: BilinearMap,
    pub k_plus: BilinearMap,
    pub k_minus: BilinearMap,
    pub k00: BilinearMap,
}

impl ContinualPresentation {
    /// All `K` maps zero.
    pub fn abelian(base: BaseAlgebra) -> Self {
        let z = BilinearMap::zero(base.dim());
        ContinualPresentation { k0: z.clone(), k_plus: z.clone(), k_minus: z.clone(), k00: z, base }
    }

    /// `K_0 = K_+ = ` the base product, `K_- = k_minus_sign` times it and
    /// `K_{0,0} = 0`.
    pub fn product_type(base: BaseAlgebra, k_minus_sign: i64) -> Self {
        let p = base.product.clone();
        ContinualPresentation {
            k0: p.clone(),
            k_plus: p.clone(),
            k_minus: p.scaled(&q(k_minus_sign)),
            k00: BilinearMap::zero(base.dim()),
            base,
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// Exhaustive check of the two consistency conditions forced by the
/// Jacobi identities,
/// `K_±(K_{0,0}(φ, ψ), χ) = K_±(φ, K_±(ψ, χ)) - K_±(ψ, K_±(φ, χ))` and
/// `K_{0,0}(ψ, K_0(φ, χ)) = K_0(K_+(ψ, φ), χ) + K_0(φ, K_-(ψ, χ))`,
/// over all basis triples.
pub fn verify_k_conditions(p: &ContinualPresentation) -> Vec<CheckReport> {
    let d = p.dim();
    let labels = &p.base.labels;
    let name = |i: usize, j: usize, k: usize| format!("(φ, ψ, χ) = ({}, {}, {})", labels[i], labels[j], labels[k]);
    let mut out = Vec::new();
    for (sign, k) in [("+", &p.k_plus), ("-", &p.k_minus)] {
        let mut rep = CheckReport::new(format!("K_{sign} derivation condition"));
        for (i, j, l) in triples(d) {
            let (x, y, z) = (unit(d, i), unit(d, j), unit(d, l));
            let lhs = k.apply(&p.k00.apply(&x, &y), &z);
            let a = k.apply(&x, &k.apply(&y, &z));
            let b = k.apply(&y, &k.apply(&x, &z));
            let rhs: Elem = a.iter().zip(&b).map(|(a, b)| a - b).collect();
            rep.checked += 1;
            if lhs != rhs {
                rep.fail(format!("{}: {} vs {}", name(i, j, l), p.base.show(&lhs), p.base.show(&rhs)));
                break;
            }
        }
        out.push(rep);
    }
    let mut rep = CheckReport::new("K_0 compatibility condition");
    for (i, j, l) in triples(d) {
        let (x, y, z) = (unit(d, i), unit(d, j), unit(d, l));
        let lhs = p.k00.apply(&y, &p.k0.apply(&x, &z));
        let a = p.k0.apply(&p.k_plus.apply(&y, &x), &z);
        let b = p.k0.apply(&x, &p.k_minus.apply(&y, &z));
        let rhs: Elem = a.iter().zip(&b).map(|(a, b)| a + b).collect();
        rep.checked += 1;
        if lhs != rhs {
            rep.fail(format!("{}: {} vs {}", name(i, j, l), p.base.show(&lhs), p.base.show(&rhs)));
            break;
        }
    }
    out.push(rep);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(p: &ContinualPresentation) -> bool {
        verify_k_conditions(p).iter().all(CheckReport::passed)
    }

    #[test]
    fn abelian_presentation_is_consistent() {
        assert!(all_pass(&ContinualPresentation::abelian(BaseAlgebra::functions_on_points(2))));
    }

    #[test]
    fn pointwise_product_needs_opposite_lowering_sign() {
        let base = BaseAlgebra::functions_on_points(2);
        assert!(base.check_associative().passed());
        let same = verify_k_conditions(&ContinualPresentation::product_type(base.clone(), 1));
        assert!(same[0].passed() && same[1].passed());
        assert!(!same[2].passed());
        assert!(all_pass(&ContinualPresentation::product_type(base, -1)));
    }

    #[test]
    fn single_wrong_entry_is_reported() {
        let mut p = ContinualPresentation::product_type(BaseAlgebra::functions_on_points(2), -1);
        p.k_plus.set(0, 1, unit(2, 0)).unwrap();
        let reps = verify_k_conditions(&p);
        let failed: Vec<_> = reps.iter().filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed[0].failure.as_ref().unwrap().contains("(φ, ψ, χ)"));
    }

    #[test]
    fn bilinear_extension() {
        let base = BaseAlgebra::functions_on_points(2);
        let x = vec![q(2), q(3)];
        let y = vec![q(5), q(-1)];
        assert_eq!(base.mul(&x, &y), vec![q(10), q(-3)]);
    }
}
