use asymptotic_hecke::sl2::oracle::{count_depth, volume_depth, DEFAULT_BUDGET};
use asymptotic_hecke::sl2::{
    brute_force_count, brute_force_volume_ratio, conv_cell_value, conv_f_value, convergence_check,
    expected_conv_f_value, gamma_n, pair_sum, schwartz_decay_check, verify_relations, volume_ratio, CellFunction,
    LatticeCondition, RatFunc, Tail,
};
use asymptotic_hecke::Error;
use dashu_int::IBig;
use dashu_ratio::RBig;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    let poly = || prop::collection::vec(-5i64..=5, 1..4);
    (poly(), poly(), -3i64..=3).prop_filter_map("zero denominator", |(n, d, k)| {
        if d.iter().all(|&c| c == 0) {
            return None;
        }
        Some(&RatFunc::from_coeffs(&n, &d) * &RatFunc::q_pow(k))
    })
}

fn lattice() -> impl Strategy<Value = LatticeCondition> {
    prop_oneof![Just(LatticeCondition::Standard), Just(LatticeCondition::Shifted)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rational_functions_form_a_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        // canonical form: equal values print identically
        if !c.is_zero() {
            let round = &(&a * &c) / &(&c + &RatFunc::q_pow(9));
            let again = &(&round * &(&c + &RatFunc::q_pow(9))) / &c;
            prop_assert_eq!(again.to_string(), a.to_string());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), q in 2i64..=7) {
        let q = RBig::from(q);
        if let (Some(x), Some(y), Some(xy)) = (a.eval(&q), b.eval(&q), (&a * &b).eval(&q)) {
            prop_assert_eq!(xy, &x * &y);
            prop_assert_eq!((&a + &b).eval(&q).unwrap(), x + y);
        }
    }

    #[test]
    fn counting_oracle_matches_tables(n in -3i64..=3, r in -3i64..=3, cond in lattice(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let m = count_depth(n, r, cond);
        prop_assume!(p.pow(2 * m) <= DEFAULT_BUDGET);
        let res = brute_force_count(p, m, n, r, cond, DEFAULT_BUDGET).unwrap();
        let q = RBig::from(p);
        let value = volume_ratio(n).eval(&q).unwrap() * RBig::from(p + 1) * res.fraction();
        prop_assert_eq!(Some(value), conv_cell_value(n, r, cond).eval(&q));
    }

    #[test]
    fn column_of_tables_is_geometric(r in -8i64..=8, cond in lattice()) {
        let col = CellFunction::convolution_column(r, cond);
        for n in -30..=30 {
            prop_assert_eq!(col.coefficient(n), conv_cell_value(n, r, cond));
        }
    }
}

#[test]
fn convolution_identities_hold_symbolically() {
    for r in -5..=5 {
        let std = conv_f_value(r, LatticeCondition::Standard).unwrap();
        let sub = conv_f_value(r, LatticeCondition::Shifted).unwrap();
        if r <= 0 {
            assert_eq!(std.to_string(), "(q+1)/(1)");
        } else {
            assert!(std.is_zero(), "r={r}: {std}");
        }
        assert!(sub.is_zero(), "r={r}: {sub}");
        for cond in LatticeCondition::ALL {
            assert_eq!(conv_f_value(r, cond).unwrap(), expected_conv_f_value(r, cond));
        }
    }
}

#[test]
fn convolution_identities_hold_at_rational_points() {
    for q in [2, 3] {
        let q = RBig::from(q);
        for r in -5..=5 {
            for cond in LatticeCondition::ALL {
                let direct = conv_f_value(r, cond).unwrap().eval(&q).unwrap();
                assert_eq!(Some(direct), expected_conv_f_value(r, cond).eval(&q));
                let c = convergence_check(r, cond, 25, &q).unwrap();
                assert!(c.pass && c.bound < RBig::from_parts(IBig::ONE, 1000u16.into()));
            }
        }
    }
}

#[test]
fn relations() {
    let rep = verify_relations(50).unwrap();
    assert_eq!(rep.checks.len(), 101);
    assert_eq!(rep.failed, 0);
    let first = &rep.checks[0];
    assert_eq!((first.relation, first.r), ("rel1", 1));
    // r=1: −q⁻¹ + q·q⁻² = 0 and r=0: q·(−q⁻¹) + 1 = 0
    assert!((&gamma_n(1) + &(&RatFunc::q() * &gamma_n(-1))).is_zero());
    assert!((&(&RatFunc::q() * &gamma_n(1)) + &gamma_n(0)).is_zero());
}

#[test]
fn volumes_against_oracle() {
    let mut visited = 0;
    for (p, m) in [(2u64, 4u32), (3, 3)] {
        for n in -2..=2 {
            let depth = m.max(volume_depth(n));
            let (ratio, res) = brute_force_volume_ratio(p, depth, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(Some(ratio), volume_ratio(n).eval(&RBig::from(p)));
            visited += res.visited;
        }
    }
    assert!(visited <= DEFAULT_BUDGET);
    assert!(matches!(
        brute_force_volume_ratio(3, 3, -2, DEFAULT_BUDGET),
        Err(Error::DepthTooSmall { threshold: 5, depth: 3 })
    ));
}

#[test]
fn oracle_examples() {
    let frac = |p: u64, m, n, r, c| brute_force_count(p, m, n, r, c, DEFAULT_BUDGET).unwrap().fraction();
    assert_eq!(
        frac(2, 4, 1, 0, LatticeCondition::Standard),
        RBig::from_parts(IBig::ONE, 3u8.into())
    );
    assert_eq!(frac(3, 3, 0, 0, LatticeCondition::Standard), RBig::ONE);
    assert_eq!(frac(2, 4, 1, 2, LatticeCondition::Standard), RBig::ZERO);
}

#[test]
fn decay() {
    let rep = schwartz_decay_check(10, &RBig::from(2)).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.entries.len(), 21);
    assert_eq!((rep.max_weighted.clone(), rep.argmax), (RBig::ONE, 0));
    assert!(schwartz_decay_check(10, &RBig::from(3)).unwrap().pass);
    let seven_halves = RBig::from_parts(IBig::from(7), 2u8.into());
    assert!(schwartz_decay_check(40, &seven_halves).unwrap().pass);
}

#[test]
fn user_supplied_divergent_functions_are_rejected() {
    let up = |ratio| CellFunction::new(BTreeMap::new(), Some(Tail::new(0, RatFunc::one(), ratio)), None).unwrap();
    let err = pair_sum(&up(RatFunc::q()), &up(RatFunc::one())).unwrap_err();
    assert!(matches!(err, Error::DivergentTail(_)));
    let err = pair_sum(&up(RatFunc::from_coeffs(&[1], &[2, 1])), &up(RatFunc::one())).unwrap_err();
    assert!(matches!(err, Error::DivergentTail(_)));
}

#[test]
fn reports_serialize() {
    let v = serde_json::to_value(verify_relations(2).unwrap()).unwrap();
    assert_eq!(v["passed"], 5);
    assert_eq!(v["checks"][0]["value"], "(0)/(1)");
    let v = serde_json::to_value(schwartz_decay_check(2, &RBig::from(2)).unwrap()).unwrap();
    assert_eq!(v["max_weighted"], "1");
    let v = serde_json::to_value(CellFunction::gamma()).unwrap();
    assert_eq!(v["upper"]["init"], "(-1)/(q)");
}
