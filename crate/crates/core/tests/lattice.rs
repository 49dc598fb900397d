//! Weak-composition lattices against the explicit poset.

use anticode_core::oracle::PosetOracle;
use anticode_core::wcomp::{self, WeakComposition};
use proptest::prelude::*;

fn composition(len: usize, n: usize) -> impl Strategy<Value = WeakComposition> {
    let all = wcomp::enumerate(len, n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn triple() -> impl Strategy<Value = (WeakComposition, WeakComposition, WeakComposition)> {
    (1usize..=5, 0usize..=6)
        .prop_flat_map(|(len, n)| (composition(len, n), composition(len, n), composition(len, n)))
}

proptest! {
    #[test]
    fn join_and_meet_are_bounds((a, b, c) in triple()) {
        let j = a.join(&b).unwrap();
        let m = a.meet(&b).unwrap();
        prop_assert!(a.dominated_by(&j).unwrap() && b.dominated_by(&j).unwrap());
        prop_assert!(m.dominated_by(&a).unwrap() && m.dominated_by(&b).unwrap());
        if a.dominated_by(&c).unwrap() && b.dominated_by(&c).unwrap() {
            prop_assert!(j.dominated_by(&c).unwrap());
        }
        if c.dominated_by(&a).unwrap() && c.dominated_by(&b).unwrap() {
            prop_assert!(c.dominated_by(&m).unwrap());
        }
    }

    #[test]
    fn reversal_reverses_order((a, b, _) in triple()) {
        prop_assert_eq!(a.dominated_by(&b).unwrap(), b.reversed().dominated_by(&a.reversed()).unwrap());
        prop_assert_eq!(a.reversed().reversed(), a);
    }

    #[test]
    fn linear_order_extends_dominance((a, b, _) in triple()) {
        if a.dominated_by(&b).unwrap() {
            prop_assert!(a.linear_cmp(&b).unwrap().is_le());
        }
        prop_assert_eq!(a.linear_cmp(&b).unwrap() == std::cmp::Ordering::Equal, a == b);
    }

    #[test]
    fn covers_raise_height_by_one((a, _, _) in triple()) {
        for b in a.covers() {
            prop_assert_eq!(b.height(), a.height() + 1);
            prop_assert!(a.dominated_by(&b).unwrap());
            prop_assert!(b.lower_covers().contains(&a));
        }
    }

    #[test]
    fn mobius_vanishes_outside_boolean_part((a, b, _) in triple()) {
        if a.dominated_by(&b).unwrap() {
            let mu = wcomp::mobius(&a, &b).unwrap();
            let boolean = a.boolean_sublattice().contains(&b);
            prop_assert_eq!(mu != 0, boolean);
        }
    }
}

#[test]
fn closed_forms_on_small_lattices() {
    for len in 1..=4 {
        for n in 0..=4 {
            let o = PosetOracle::new(len, n, 10_000).unwrap();
            assert_eq!(o.len() as u128, wcomp::lattice_size(len, n).unwrap());
            let mu = o.mobius_table();
            for (i, a) in o.elements.iter().enumerate() {
                for (j, b) in o.elements.iter().enumerate() {
                    if o.leq(i, j) {
                        assert_eq!(wcomp::mobius(a, b).unwrap(), mu[i][j], "μ({a}, {b})");
                    }
                }
            }
            let chains = o.maximal_chains();
            let length = wcomp::maximal_chain_length(len, n);
            assert!(chains.iter().all(|c| c.len() == length + 1), "Δ_{len}({n})");
            assert_eq!(wcomp::maximal_chains(len, n, 1 << 20).unwrap().count(), chains.len());
        }
    }
}
