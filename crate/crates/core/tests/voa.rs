use num_traits::Zero;
use proptest::prelude::*;
use vabc::scalar::{q, Q};
use vabc::voa::{Heisenberg, Partition, Vector};

// Partitions of n with parts at most k, by the standard recurrence.
fn partition_count(n: u32, k: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let with_k = if n >= k { partition_count(n - k, k) } else { 0 };
    with_k + partition_count(n, k - 1)
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..4, 0..3)
        .prop_filter("weight at most 3", |p| p.iter().sum::<u32>() <= 3)
        .prop_map(Partition::new)
}

fn vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec((partition(), -3i64..4), 1..4).prop_map(|terms| {
        let mut v = Vector::zero();
        for (p, c) in terms {
            v.add_term(p, q(c));
        }
        v
    })
}

#[test]
fn graded_dimensions_match_partition_counts() {
    let h = Heisenberg::new(6).unwrap();
    for w in 0..=6 {
        assert_eq!(h.basis(w).len() as u64, partition_count(w, w), "weight {w}");
        assert!(h.basis(w).iter().all(|p| p.weight() == w));
    }
    let dims: Vec<usize> = (0..=4).map(|w| Heisenberg::new(4).unwrap().basis(w).len()).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 5]);
}

#[test]
fn pairing_convention() {
    let h = Heisenberg::new(3).unwrap();
    let a = Vector::a();
    assert_eq!(h.form(&h.vacuum(), &h.vacuum()).unwrap(), q(1));
    assert_eq!(h.form(&a, &a).unwrap(), q(-1));
    assert_eq!(h.mode(&a, 1, &a), Vector::vacuum());
    assert_eq!(h.central_charge(), q(1));
}

#[test]
fn axiom_suite_passes() {
    let h = Heisenberg::new(4).unwrap();
    for (name, ok) in h.axiom_checks() {
        assert!(ok, "{name}");
    }
}

#[test]
fn conformal_weight_is_eigenvalue() {
    let h = Heisenberg::new(5).unwrap();
    for w in 0..=5 {
        for p in h.basis(w) {
            let v = Vector::basis(p);
            assert_eq!(h.virasoro(0, &v), v.scale(&q(w as i64)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heisenberg_commutator(m in -3i64..4, n in -3i64..4, w in vector()) {
        let h = Heisenberg::new(9).unwrap();
        let a = Vector::a();
        let mn = h.mode(&a, m, &h.mode(&a, n, &w));
        let nm = h.mode(&a, n, &h.mode(&a, m, &w));
        let expected = if m + n == 0 { w.scale(&q(m)) } else { Vector::zero() };
        prop_assert_eq!(mn.sub(&nm), expected);
    }

    #[test]
    fn vacuum_modes(n in -4i64..4, w in vector()) {
        let h = Heisenberg::new(6).unwrap();
        let out = h.mode(&h.vacuum(), n, &w);
        let expected = if n == -1 { w } else { Vector::zero() };
        prop_assert_eq!(out, expected);
    }

    #[test]
    fn form_symmetric_and_graded(u in vector(), w in vector()) {
        let h = Heisenberg::new(3).unwrap();
        prop_assert_eq!(h.form(&u, &w).unwrap(), h.form(&w, &u).unwrap());
        for (du, pu) in u.homogeneous_parts() {
            for (dw, pw) in w.homogeneous_parts() {
                if du != dw {
                    prop_assert!(h.form(&pu, &pw).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn dual_basis_is_dual(weight in 0u32..4) {
        let h = Heisenberg::new(3).unwrap();
        let pairs = h.dual_basis(weight).unwrap();
        for (i, (b, _)) in pairs.iter().enumerate() {
            for (j, (_, d)) in pairs.iter().enumerate() {
                let expected: Q = if i == j { q(1) } else { q(0) };
                prop_assert_eq!(h.form(b, d).unwrap(), expected);
            }
        }
    }
}
