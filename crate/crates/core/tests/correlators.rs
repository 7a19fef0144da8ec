use std::sync::Arc;

use vabc::correlators::Correlators;
use vabc::ratcalc::Rf;
use vabc::voa::{Heisenberg, Partition, Vector};

fn corr(n_max: u32) -> Correlators {
    Correlators::new(Arc::new(Heisenberg::new(n_max).unwrap()))
}

#[test]
fn two_point_function() {
    let c = corr(3);
    let e = c.e_map_w(&[Vector::a(), Vector::a()], &Vector::vacuum()).unwrap();
    assert_eq!(e.get(&Partition::vacuum()), Rf::linear_pow(2, 0, 1, -2));
}

#[test]
fn odd_number_of_currents_vanishes_on_vacuum() {
    let c = corr(3);
    let e = c.e_map_w(&[Vector::a(), Vector::a(), Vector::a()], &Vector::vacuum()).unwrap();
    assert!(e.get(&Partition::vacuum()).is_zero());
}

#[test]
fn vacuum_insertion_is_transparent() {
    let c = corr(3);
    let with = c.e_map_w(&[Vector::a(), Vector::vacuum(), Vector::a()], &Vector::vacuum()).unwrap();
    let without = Rf::linear_pow(3, 0, 2, -2);
    assert_eq!(with.get(&Partition::vacuum()), without);
}

#[test]
fn four_point_function_is_symmetric() {
    let c = corr(4);
    let e = c.e_map_w(&vec![Vector::a(); 4], &Vector::vacuum()).unwrap();
    for sigma in [[1, 0, 2, 3], [0, 2, 1, 3], [3, 1, 2, 0], [1, 2, 3, 0]] {
        assert_eq!(e.act_sn(&sigma).unwrap(), e, "{sigma:?}");
    }
}

#[test]
fn duality_holds_for_low_weights() {
    let c = corr(3);
    let a = Vector::a();
    let a2 = Vector::basis(Partition::new(vec![2]));
    for (u1, u2) in [(&a, &a), (&a, &a2), (&a2, &a)] {
        let rep = c.duality_check(u1, u2, &Vector::vacuum(), 6).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }
}
