use std::sync::Arc;

use proptest::prelude::*;
use vabc::bicomplex::*;
use vabc::correlators::{Correlators, WbarMap};
use vabc::ratcalc::Rf;
use vabc::scalar::q;
use vabc::voa::{Heisenberg, Partition, Vector};

fn setup(n_max: u32) -> (Arc<Heisenberg>, Evaluator) {
    let va = Arc::new(Heisenberg::new(n_max).unwrap());
    let ev = Evaluator::for_instance(va.clone());
    (va, ev)
}

fn v(s: &str) -> Vector {
    s.parse().unwrap()
}

fn gen(w: &str, n: usize, m: u32) -> Cochain {
    Cochain::generator(v(w), n, Grade::Whole(m))
}

fn assert_zero_on_grid(ev: &Evaluator, c: &Cochain, probe: u32) {
    for ins in probe_tuples(ev.va(), c.arity(), probe) {
        let r = ev.evaluate_labels(c, &ins).unwrap();
        assert!(r.is_zero(), "nonzero on {ins:?}:\n{r}");
    }
}

#[test]
fn generator_of_vacuum_is_the_vertex_series_of_its_input() {
    let (va, ev) = setup(3);
    let phi = gen("1", 1, 0);
    for input in va.basis_up_to(2) {
        for mu in va.basis_up_to(3) {
            // <mu', Y(v, z) 1> = sum_p <mu', v(p) 1> z^{-p-1}
            let mut expect = Rf::zero(1);
            for p in -4..=0i64 {
                let c = va.mode_basis(&input, p, &Partition::vacuum()).coeff(&mu);
                expect = expect.add(&Rf::var_pow(1, 0, (-p - 1) as i32).scale(&c)).unwrap();
            }
            assert_eq!(ev.component(&phi, &[input.clone()], &mu).unwrap(), expect, "{input} at {mu}");
        }
    }
}

#[test]
fn difference_of_equal_cochains_vanishes() {
    let (_, ev) = setup(3);
    let phi = gen("a", 2, 1);
    let zero = phi.sub(&phi).unwrap();
    assert_zero_on_grid(&ev, &zero, 1);
}

#[test]
fn composition_of_two_free_bosons_has_a_double_pole() {
    let (_, ev) = setup(3);
    let phi = gen("1", 1, 1);
    let c = phi.compose_at(1).unwrap();
    let a = Partition::new(vec![1]);
    let f = ev.component(&c, &[a.clone(), a], &Partition::vacuum()).unwrap();
    assert_eq!(f, Rf::linear_pow(2, 0, 1, -2));
}

#[test]
fn coboundary_of_generator_is_the_two_point_correlator() {
    // Associativity and commutativity collapse the three terms into E^(2).
    let (va, ev) = setup(3);
    let corr = Correlators::new(va.clone());
    for w in ["1", "a"] {
        let anchor = Partition::new(if w == "a" { vec![1] } else { vec![] });
        let d = gen(w, 1, 2).delta().unwrap();
        assert_eq!(d.tag(), Tag::whole(2, 1));
        for ins in probe_tuples(&va, 2, 1) {
            for mu in va.basis_up_to(3) {
                let lhs = ev.component(&d, &ins, &mu).unwrap();
                let rhs = corr.e_component(&ins, &anchor, &mu).unwrap();
                assert_eq!(lhs, rhs, "{ins:?} at {mu}");
            }
        }
    }
}

#[test]
fn coboundary_squares_to_zero() {
    let (_, ev) = setup(3);
    for (w, n) in [("1", 0), ("a", 0), ("1", 1), ("a", 1)] {
        let dd = gen(w, n, 2).delta().unwrap().delta().unwrap();
        assert_eq!(dd.tag(), Tag::whole(n + 2, 0));
        assert_zero_on_grid(&ev, &dd, 1);
    }
}

#[test]
fn half_coboundary_kills_coboundaries() {
    let (_, ev) = setup(3);
    let d = gen("a", 1, 2).delta().unwrap().viewed_as(Tag::new(2, Grade::Half)).unwrap();
    let dd = d.delta_half().unwrap();
    assert_eq!(dd.tag(), Tag::whole(3, 0));
    assert_zero_on_grid(&ev, &dd, 1);
}

#[test]
fn coboundary_domain() {
    assert!(gen("1", 1, 0).delta().is_err());
    assert!(gen("1", 1, 3).delta_half().is_err());
    assert!(gen("1", 2, 1).delta_half().is_ok());
    let z = Cochain::zero(1, Grade::Whole(2)).delta().unwrap();
    let (_, ev) = setup(3);
    assert_zero_on_grid(&ev, &z, 2);
}

#[test]
fn l0_property() {
    let (_, ev) = setup(3);
    assert!(check_l0(&ev, &gen("1", 2, 1), 1).passed());
    assert!(check_l0(&ev, &Cochain::zero(2, Grade::Whole(1)), 1).passed());
    let broken = gen("1", 1, 1).fake_mul_var(0).unwrap();
    assert!(!check_l0(&ev, &broken, 1).passed());
}

#[test]
fn lm1_property() {
    let (_, ev) = setup(3);
    assert!(check_lm1(&ev, &gen("1", 2, 1), 1).passed());
    let constant = Cochain::fake_constant(v("1"), 1, Grade::Whole(1));
    let rep = check_lm1(&ev, &constant, 1);
    assert!(rep.failure.as_deref().is_some_and(|f| f.contains("clause (i)")), "{rep}");
}

#[test]
fn shuffle_condition() {
    let (_, ev) = setup(3);
    assert!(check_shuffle(&ev, &gen("1", 2, 1), 2, 1, 1).passed());
    assert!(check_shuffle(&ev, &gen("a", 2, 1), 2, 1, 1).passed());
    assert!(check_shuffle(&ev, &Cochain::zero(2, Grade::Whole(1)), 2, 1, 1).passed());
    let skew = gen("1", 2, 1).fake_mul_var(0).unwrap();
    assert!(!check_shuffle(&ev, &skew, 2, 1, 1).passed());
}

#[test]
fn composability_of_generators() {
    let (_, ev) = setup(3);
    let rep = check_composable(&ev, &gen("1", 1, 1), 1, 1);
    assert!(rep.passed(), "{} / {}", rep.condition1, rep.condition2);
    for (&(i, j), &order) in &rep.witnesses {
        assert!(i < j && order <= 2, "pole order {order} at ({i}, {j})");
    }
    assert!(check_composable(&ev, &gen("a", 2, 0), 0, 1).passed());
}

#[test]
fn half_membership_of_generators() {
    let (_, ev) = setup(3);
    let phi = gen("1", 2, 1);
    assert!(check_half_membership(&ev, &phi, 1).passed());
}

#[test]
fn cohomology_of_small_families() {
    let (_, ev) = setup(3);
    assert_eq!(
        cohomology_dim(&ev, &[], 1, 1, 1).unwrap(),
        CohomologyReport { rank_delta: 0, dim_kernel: 0, dim_cohomology: 0 }
    );
    let psi = gen("a", 1, 2);
    let phi = psi.delta().unwrap();
    let rep = cohomology_dim(&ev, &[phi.clone(), psi.clone()], 2, 1, 1).unwrap();
    assert_eq!(rep, CohomologyReport { rank_delta: 0, dim_kernel: 1, dim_cohomology: 0 });
    assert!(cohomology_dim(&ev, &[gen("1", 3, 0)], 2, 1, 1).is_err());
}

#[test]
fn sexpr_round_trip() {
    let phi = gen("a(-2)|0> + 1/2 * a(-1)a(-1)|0>", 2, 2);
    let c = Cochain::linear(vec![(q(3), phi.delta().unwrap()), (q(-1), phi.perm(vec![1, 0]).unwrap().insert_left().unwrap())])
        .unwrap()
        .delta()
        .unwrap();
    let text = to_sexpr(&c);
    let back = from_sexpr(&text).unwrap();
    assert_eq!(to_sexpr(&back), text);
    assert_eq!(back.tag(), c.tag());
    assert!(from_sexpr("(gen 1 2").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]
    #[test]
    fn evaluation_is_multilinear(a in -5i64..5, b in -5i64..5, slot in 0usize..2) {
        let (_, ev) = setup(3);
        let phi = gen("a", 2, 1).delta().unwrap();
        let (x, y, z) = (v("a"), v("a(-2)|0>"), v("1"));
        let mut mixed = vec![z.clone(), z.clone(), x.clone()];
        mixed[slot] = x.scale(&q(a)).add(&y.scale(&q(b)));
        let mut with_x = vec![z.clone(), z.clone(), x.clone()];
        with_x[slot] = x.clone();
        let mut with_y = vec![z.clone(), z, x];
        with_y[slot] = y;
        let lhs = ev.evaluate(&phi, &mixed).unwrap();
        let mut rhs = WbarMap::zero(3);
        rhs.add_scaled(&ev.evaluate(&phi, &with_x).unwrap(), &q(a)).unwrap();
        rhs.add_scaled(&ev.evaluate(&phi, &with_y).unwrap(), &q(b)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }
}
