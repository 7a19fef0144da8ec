use std::sync::Arc;

use proptest::prelude::*;
use vabc::bicomplex::*;
use vabc::diffalg::*;
use vabc::scalar::q;
use vabc::voa::{Heisenberg, Vector};

fn setup(n_max: u32) -> Evaluator {
    Evaluator::for_instance(Arc::new(Heisenberg::new(n_max).unwrap()))
}

fn gen(w: &str, n: usize, m: u32) -> Cochain {
    Cochain::generator(w.parse::<Vector>().unwrap(), n, Grade::Whole(m))
}

fn vanishes(ev: &Evaluator, c: &Cochain, probe: u32) -> bool {
    residual_report(ev, "residual", c, probe).passed()
}

#[test]
fn product_lands_in_the_expected_space() {
    let ev = setup(3);
    let p = star(&gen("1", 1, 1), &gen("a", 1, 2), &ProductContext::free()).unwrap();
    assert_eq!(p.tag(), Tag::whole(2, 3));
    let p = star(&gen("1", 2, 2), &gen("a", 1, 2), &ProductContext::diagonal(1, 1)).unwrap();
    assert_eq!(p.tag(), Tag::whole(2, 3));
    let a = "a".parse::<Vector>().unwrap();
    assert_eq!(ev.evaluate(&p, &[a.clone(), a]).unwrap().arity(), 2);
    assert!(star(&gen("1", 1, 1), &gen("1", 1, 1), &ProductContext::diagonal(2, 0)).is_err());
    assert!(star(&gen("1", 1, 1), &gen("1", 1, 0), &ProductContext::diagonal(0, 1)).is_err());
}

#[test]
fn products_with_zero_vanish() {
    let ev = setup(3);
    let z = Cochain::zero(1, Grade::Whole(1));
    let ctx = ProductContext::free();
    assert!(vanishes(&ev, &star(&z, &gen("a", 1, 1), &ctx).unwrap(), 1));
    assert!(vanishes(&ev, &dot(&gen("a", 1, 1), &z, &ctx).unwrap(), 1));
}

#[test]
fn self_commutator_vanishes_under_full_identification() {
    let ev = setup(3);
    for w in ["1", "a"] {
        let phi = gen(w, 1, 1);
        assert!(vanishes(&ev, &dot(&phi, &phi, &ProductContext::diagonal(1, 0)).unwrap(), 1));
    }
}

#[test]
fn commutator_is_antisymmetric() {
    let ev = setup(3);
    let (phi, psi) = (gen("1", 1, 1), gen("a", 2, 1));
    for ctx in [ProductContext::free(), ProductContext::diagonal(1, 0), ProductContext::diagonal(1, 1)] {
        let rep = check_antisymmetry(&ev, &phi, &psi, &ctx, 1);
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn product_does_not_depend_on_the_basis() {
    let ev = setup(3);
    for seed in [1, 7] {
        let rep = check_basis_independence(&ev, &gen("a", 1, 1), &gen("1", 1, 1), &ProductContext::free(), seed, 1);
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn leibniz_domain_and_trivial_case() {
    let ev = setup(3);
    let phi = gen("1", 1, 1);
    assert!(check_leibniz(&ev, &phi, &phi, &ProductContext::diagonal(1, 0), 1).is_err());
    let z = Cochain::zero(1, Grade::Whole(1));
    assert!(check_leibniz(&ev, &z, &z, &ProductContext::free(), 1).unwrap().passed());
}

#[test]
fn grading_forces_zero_composability() {
    let sols = grading_solutions(3, 0, 3);
    assert!(!sols.is_empty());
    for s in &sols {
        assert_eq!((s.m, s.m_prime, s.t), (0, 0, 0));
        assert_eq!(s.n + s.n_prime - s.r, 3);
    }
    assert!(sols.contains(&GradingSolution { n: 2, n_prime: 1, r: 0, m: 0, m_prime: 0, t: 0 }));
}

#[test]
fn closed_seed_gives_a_degenerate_chain() {
    let ev = setup(3);
    // δ vanishes on arity 0, so δχ = 0 and α_1 = 0 solves the first relation.
    let chi = gen("a", 0, 2);
    let phi = gen("1", 1, 1);
    let cfg = ChainConfig { ctx: ProductContext::free(), max_steps: 2, probe: 1, ansatz_weight: 1 };
    let chain = orthogonality_chain(&ev, &chi, &phi, &cfg).unwrap();
    assert_eq!(chain.premise.status, RelationStatus::Verified);
    let a1 = &chain.unknowns[0];
    assert_eq!(a1.tag, Tag::whole(0, 0));
    assert!(a1.coefficients.is_empty());
    assert!(chain.index_equations.iter().any(|e| e == "n1 = 0, m1 = 0"));
    assert!(chain.to_string().contains("dchi == Phi.alpha1  [C^1_1]  verified"));
    assert_eq!(chain.machine_lines().len(), chain.relations.len() + 1);
}

#[test]
fn nonvanishing_report_carries_the_grading_argument() {
    let ev = setup(3);
    let rep = nonvanishing_check(&ev, &Cochain::zero(1, Grade::Whole(2)), &ProductContext::free(), 1).unwrap();
    assert!(rep.witness.is_none());
    assert!(rep.obstruction.contains("m' = t - 1"));
}

#[test]
fn class_invariance_with_trivial_perturbations() {
    let ev = setup(3);
    let phi = gen("1", 1, 2);
    let ctx = ProductContext::free();
    for eta in [Cochain::zero(1, Grade::Whole(2)), phi.clone()] {
        for rep in class_invariance_check(&ev, &phi, &eta, &ctx, 1) {
            assert!(rep.passed(), "{rep}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn star_is_bilinear(a in -3i64..4, b in -3i64..4) {
        let ev = setup(2);
        let ctx = ProductContext::free();
        let (x, y, psi) = (gen("1", 1, 1), gen("a", 1, 1), gen("a", 1, 1));
        let combo = Cochain::linear(vec![(q(a), x.clone()), (q(b), y.clone())]).unwrap();
        let lhs = star(&combo, &psi, &ctx).unwrap();
        let rhs = Cochain::linear(vec![(q(a), star(&x, &psi, &ctx).unwrap()), (q(b), star(&y, &psi, &ctx).unwrap())]).unwrap();
        prop_assert!(vanishes(&ev, &lhs.sub(&rhs).unwrap(), 1));
        let right = star(&psi, &combo, &ctx).unwrap();
        let right_split = Cochain::linear(vec![(q(a), star(&psi, &x, &ctx).unwrap()), (q(b), star(&psi, &y, &ctx).unwrap())]).unwrap();
        prop_assert!(vanishes(&ev, &right.sub(&right_split).unwrap(), 1));
    }
}
