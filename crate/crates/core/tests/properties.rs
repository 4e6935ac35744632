use num_traits::{Signed, Zero};
use pbf_core::bounds::{check_classical_42, check_theorem_2r, check_theorem_2r_refined, check_theorem_42, coeff_width_42, BoundValue};
use pbf_core::maxlin::{alon_witness_check, decide, excess_polynomial, kernelize, random_system, SystemShape, Verdict};
use pbf_core::moments::{even_moment, even_moment_oracle, p_norm, second_moment};
use pbf_core::transform::{degree, expansion_to_table, table_to_expansion, wht, width};
use pbf_core::{rational, Execution, FourierExpansion, Limits, Rational, TruthTable, VarSet};
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => (1i64..=12, any::<bool>()).prop_map(|(v, neg)| rational(if neg { -v } else { v })),
        1 => (1i64..=9, 1i64..=6, any::<bool>())
            .prop_map(|(p, q, neg)| Rational::new((if neg { -p } else { p }).into(), q.into())),
    ]
}

fn expansion(max_n: usize, max_m: usize) -> impl Strategy<Value = FourierExpansion> {
    (0..=max_n).prop_flat_map(move |n| {
        prop::collection::btree_map(0u64..(1 << n), coefficient(), 0..=max_m).prop_map(move |terms| {
            FourierExpansion::new(n, terms.into_iter().map(|(m, c)| (VarSet::from_mask(m), c))).unwrap()
        })
    })
}

fn table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-6i64..=6, 1 << n)
            .prop_map(|v| TruthTable::new(v.into_iter().map(rational).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn terms_round_trip(f in expansion(8, 20)) {
        let terms: Vec<(VarSet, Rational)> = f.terms().map(|(m, c)| (m, c.clone())).collect();
        let g = FourierExpansion::new(f.n(), terms.clone()).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.m(), terms.len());
    }

    #[test]
    fn flipping_a_variable_negates_its_terms(f in expansion(8, 20), point in any::<u64>(), var in 1usize..=8) {
        prop_assume!(var <= f.n());
        let point = point & ((1u64 << f.n()) - 1);
        let flipped = point ^ (1 << (var - 1));
        let containing: Rational = f.terms()
            .filter(|(m, _)| m.contains(var))
            .map(|(m, c)| if m.flips_sign_at(point) { -c } else { c.clone() })
            .sum();
        prop_assert_eq!(f.evaluate_index(point) - f.evaluate_index(flipped), containing * rational(2));
    }

    #[test]
    fn table_matches_pointwise_evaluation(f in expansion(8, 24)) {
        let t = expansion_to_table(&f).unwrap();
        for (b, v) in t.values().iter().enumerate() {
            let x = pbf_core::point_from_index(f.n(), b as u64);
            prop_assert_eq!(v, &f.evaluate(&x).unwrap());
        }
        prop_assert_eq!(table_to_expansion(&t), f);
    }

    #[test]
    fn table_round_trip(t in table(8)) {
        prop_assert_eq!(expansion_to_table(&table_to_expansion(&t)).unwrap(), t);
    }

    #[test]
    fn transform_twice_scales(t in table(8)) {
        let twice = wht(&wht(t.values()).unwrap()).unwrap();
        let scale = rational(1i64 << t.n());
        let expected: Vec<Rational> = t.values().iter().map(|v| v * &scale).collect();
        prop_assert_eq!(twice, expected);
    }

    #[test]
    fn incidence_duality_and_ranges(f in expansion(10, 30)) {
        let w = width(&f);
        let by_var: u64 = w.per_variable.iter().sum();
        let by_term: u64 = f.terms().map(|(m, _)| m.len() as u64).sum();
        prop_assert_eq!(by_var, by_term);
        prop_assert!(degree(&f) <= f.n());
        prop_assert!(w.width <= f.m() as u64);
    }

    #[test]
    fn parseval(f in expansion(8, 20)) {
        let t = expansion_to_table(&f).unwrap();
        let mean_square: Rational = t.values().iter().map(|v| v * v).sum::<Rational>() / rational(1i64 << f.n());
        prop_assert_eq!(&second_moment(&f), &mean_square);
        prop_assert_eq!(even_moment(&f, 1).value, mean_square);
    }

    #[test]
    fn sparse_moments_match_dense(f in expansion(7, 16), r in 1u32..=4) {
        let sparse = even_moment(&f, r);
        prop_assert_eq!(&sparse, &even_moment_oracle(&f, r).unwrap());
        prop_assert!(!sparse.value.is_negative());
        if !f.is_zero() {
            prop_assert!(sparse.value > Rational::zero());
        }
    }

    #[test]
    fn exact_sums_do_not_depend_on_order(f in expansion(6, 16), seed in any::<u64>()) {
        let t = expansion_to_table(&f).unwrap();
        let mut values = t.values().to_vec();
        let forward: Rational = values.iter().map(|v| v * v * v * v).sum();
        // deterministic shuffle
        let mut s = seed | 1;
        for i in (1..values.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            values.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let shuffled: Rational = values.iter().map(|v| v * v * v * v).sum();
        prop_assert_eq!(forward, shuffled);
    }

    #[test]
    fn odd_cardinality_functions_have_zero_odd_moments(
        n in 1usize..=7,
        picks in prop::collection::btree_set(0u64..128, 1..10),
        r in 0u32..=2,
    ) {
        let terms: Vec<_> = picks.into_iter()
            .map(|m| m & ((1 << n) - 1))
            .filter(|m| m.count_ones() % 2 == 1)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|m| (VarSet::from_mask(m), rational(m as i64 % 3 + 1)))
            .collect();
        let f = FourierExpansion::new(n, terms).unwrap();
        let t = expansion_to_table(&f).unwrap();
        let odd: Rational = t.values().iter().map(|v| {
            let mut acc = v.clone();
            for _ in 0..2 * r { acc *= v; }
            acc
        }).sum();
        prop_assert!(odd.is_zero());
    }

    #[test]
    fn norms_are_monotone(f in expansion(8, 20), p in 1.0f64..6.0, dq in 0.0f64..6.0) {
        let q = p + dq;
        let low = p_norm(&f, p).unwrap().value;
        let high = p_norm(&f, q).unwrap().value;
        prop_assert!(high >= low - 1e-12 * low.max(1.0), "{high} < {low}");
    }

    #[test]
    fn even_norms_match_exact_moments(f in expansion(8, 20), r in 1u32..=4) {
        let exact = pbf_core::moments::moment_root(&even_moment(&f, r).value, r);
        let float = p_norm(&f, 2.0 * r as f64).unwrap().value;
        prop_assert!((exact - float).abs() <= 1e-12 * exact.max(f64::MIN_POSITIVE), "{exact} vs {float}");
    }

    #[test]
    fn width_bound_holds_exactly(f in expansion(8, 24)) {
        let report = check_theorem_42(&f);
        prop_assert!(report.holds);
        // integer-cleared form: E[f^4] m <= ((2 rho + 1) m - 2 rho) E[f^2]^2
        let m = f.m() as i64;
        let rho = width(&f).width as i64;
        let e2 = second_moment(&f);
        let lhs = even_moment(&f, 2).value * rational(m);
        let rhs = rational((2 * rho + 1) * m - 2 * rho) * &e2 * &e2;
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn higher_bounds_hold(f in expansion(7, 16), r in 1u32..=4) {
        prop_assert!(check_theorem_2r(&f, r).holds);
        prop_assert!(check_theorem_2r_refined(&f, r).holds);
    }

    #[test]
    fn width_bound_beats_degree_bound_when_coefficient_is_smaller(f in expansion(8, 24)) {
        prop_assume!(f.m() >= 1);
        let c4 = coeff_width_42(width(&f).width, f.m() as u64).unwrap().fourth_power;
        let nine_d = (0..degree(&f)).fold(rational(1), |acc, _| acc * rational(9));
        if c4 < nine_d {
            let (BoundValue::Exact(width_rhs), BoundValue::Exact(classical_rhs)) =
                (check_theorem_42(&f).rhs, check_classical_42(&f).rhs) else { unreachable!() };
            prop_assert!(width_rhs < classical_rhs);
        }
    }

    #[test]
    fn execution_strategies_agree(f in expansion(9, 30)) {
        let limits = Limits::default();
        let seq = pbf_core::transform::expansion_to_table_with(&f, &limits, Execution::Sequential).unwrap();
        let par = pbf_core::transform::expansion_to_table_with(&f, &limits, Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
        let a = pbf_core::moments::p_norm_with(&f, 3.5, &limits, Execution::Sequential).unwrap();
        let b = pbf_core::moments::p_norm_with(&f, 3.5, &limits, Execution::Parallel).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn maxlin_properties(seed in any::<u64>()) {
        let shape = SystemShape { n_max: 8, m_max: 16, w_max: 4, k_max: 3 };
        let s = random_system(shape, seed).unwrap();
        for point in 0..1u64 << s.n() {
            prop_assert_eq!(2 * s.satisfied_weight(point), s.total_weight() + s.excess_at(point));
        }
        let q = excess_polynomial(&s);
        prop_assert!(q.coefficient(VarSet::EMPTY).is_none());
        let table = expansion_to_table(&q).unwrap();
        prop_assert!(table.values().iter().sum::<Rational>().is_zero());
        let e2 = second_moment(&q);
        prop_assert!(e2 >= rational(s.m() as i64));
        let kernel = kernelize(&s);
        if kernel.verdict == Verdict::YesByBound {
            prop_assert!(decide(&s).unwrap());
        } else {
            prop_assert_eq!(&kernel.kernel, &s);
            prop_assert!(num_bigint::BigInt::from(s.m()) < kernel.size_bound);
        }
        prop_assert!(alon_witness_check(&s).unwrap().holds);
    }
}
