use goodstein::ackermann::{ack_small, DEFAULT_CAP_BITS as CAP};
use goodstein::assignment::{assign, Map};
use goodstein::base_change::{base_change, bc_num, BcOp};
use goodstein::buchholz::{cmp_hb, fund_hb, hb_add, is_nf, HbTerm};
use goodstein::normal_form::{hereditary, hereditary_u64, Part};
use goodstein::ordinal_e0::{add_e0, fund_e0, leq_l, mc_e0, LeqL, OrdE0};
use goodstein::verifier::{random_e0, random_hb, random_otp};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn e0(seed: u64) -> OrdE0 {
    random_e0(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4)
}

fn hb(seed: u64) -> HbTerm {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    if seed.is_multiple_of(2) {
        random_hb(&mut r, 3, false)
    } else {
        random_otp(&mut r, 3)
    }
}

fn part() -> impl Strategy<Value = Part> {
    prop_oneof![Just(Part::One), Just(Part::Two)]
}

fn op() -> impl Strategy<Value = BcOp> {
    prop::sample::select(BcOp::ALL.to_vec())
}

proptest! {
    #[test]
    fn e0_text_round_trip(s in any::<u64>()) {
        let a = e0(s);
        prop_assert_eq!(a.to_string().parse::<OrdE0>().unwrap(), a);
    }

    #[test]
    fn hb_text_round_trip(s in any::<u64>()) {
        let t = hb(s);
        prop_assert_eq!(t.to_string().parse::<HbTerm>().unwrap(), t);
    }

    #[test]
    fn e0_order_is_total_and_addition_is_monotone(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (e0(a), e0(b));
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        prop_assert!(add_e0(&x, &y) >= x);
        prop_assert!(x.succ() > x);
    }

    #[test]
    fn fundamental_sequences_descend(a in any::<u64>(), x in 0u64..8) {
        let alpha = e0(a);
        prop_assume!(!alpha.is_zero());
        let ax = fund_e0(&alpha, x);
        prop_assert!(ax < alpha);
        if alpha.is_limit() {
            prop_assert!(ax < fund_e0(&alpha, x + 1));
        }
    }

    #[test]
    fn bachmann_property(a in any::<u64>(), b in any::<u64>(), x in 0u64..6) {
        let (alpha, beta) = (e0(a), e0(b));
        let ax = fund_e0(&alpha, x);
        if ax < beta && beta < alpha {
            prop_assert!(ax <= fund_e0(&beta, 1));
            prop_assert!(matches!(leq_l(&beta, &ax, 1, 100_000), LeqL::Reached(_) | LeqL::BudgetExhausted));
        }
    }

    #[test]
    fn hb_fundamental_sequences_stay_normal(s in any::<u64>(), x in 0u64..4) {
        let t = hb(s);
        prop_assume!(!t.is_zero() && t.is_countable() && is_nf(&t));
        let f = fund_hb(&t, x);
        prop_assert!(is_nf(&f));
        prop_assert_eq!(cmp_hb(&f, &t), std::cmp::Ordering::Less);
    }

    #[test]
    fn hb_addition_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (hb(a), hb(b), hb(c));
        prop_assert_eq!(hb_add(&hb_add(&x, &y), &z), hb_add(&x, &hb_add(&y, &z)));
    }

    #[test]
    fn hereditary_forms_evaluate_back(m in 0u64..200_000, k in 3u64..7, p in part()) {
        let t = hereditary_u64(m, k, p, CAP).unwrap();
        prop_assert_eq!(t.eval(CAP), Some(BigUint::from(m)));
    }

    #[test]
    fn base_change_never_shrinks(m in 0u64..50_000, k in 3u64..6, o in op(), p in part()) {
        let v = bc_num(o, &BigUint::from(m), k, p, CAP).unwrap();
        prop_assert!(v.value().unwrap() >= &BigUint::from(m));
    }

    #[test]
    fn assignments_descend_and_are_invariant(m in 1u64..50_000, k in 3u64..6, o in op(), p in part()) {
        let map = Map::paired(o);
        let t = hereditary_u64(m, k, p, CAP).unwrap();
        let prev = hereditary_u64(m - 1, k, p, CAP).unwrap();
        let here = assign(map, &t).unwrap();
        prop_assert!(assign(map, &prev).unwrap() < here);
        let moved = base_change(o, &t).eval(CAP).unwrap();
        let again = hereditary(&moved, k + 1, p, CAP).unwrap();
        prop_assert_eq!(assign(map, &again).unwrap(), here);
    }

    #[test]
    fn ackermann_grows_in_b(a in 0u64..4, k in 2u64..5, b in 0u64..6) {
        let alpha = OrdE0::nat(a);
        if let (Some(x), Some(y)) = (ack_small(&alpha, k, b, 4096), ack_small(&alpha, k, b + 1, 4096)) {
            prop_assert!(x < y);
            prop_assert!(BigUint::from(mc_e0(&alpha)) < x);
        }
    }
}
