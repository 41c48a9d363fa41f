//! Randomized laws: arithmetic identities, key canonicalization, and
//! consistency between independent computation routes.

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;
use proptest::prelude::*;

use planecount::descendant::{DescendantEvaluator, TrrStrategy};
use planecount::key::{Class, Correlator, Insertion, SpecialDegree};
use planecount::rational::{binomial, factorial, is_counting_number, multinomial};
use planecount::{Engine, InvariantKey, Rational};

/// Shared engine so repeated cases hit the memo instead of recomputing.
static ENGINE: Lazy<Engine> = Lazy::new(Engine::new);

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(p, q)| Rational::ratio(p, q))
}

proptest! {
    #[test]
    fn rational_arithmetic_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, Rational::zero());
        prop_assert_eq!(-&(-&a), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn rational_string_round_trip(a in rational()) {
        let s = a.canonical_string();
        let back: Rational = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn binomial_pascal_rule(n in 1i64..=48, k in -2i64..=50) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn multinomial_matches_factorial_ratio(parts in prop::collection::vec(0i64..=6, 1..=4)) {
        let n: i64 = parts.iter().sum();
        let mut denom = BigInt::one();
        for &p in &parts {
            denom *= factorial(p as u64);
        }
        prop_assert_eq!(multinomial(n, &parts) * denom, factorial(n as u64));
    }
}

fn class() -> impl Strategy<Value = Class> {
    prop_oneof![Just(Class::Fundamental), Just(Class::Line), Just(Class::Point)]
}

fn special_degree() -> impl Strategy<Value = SpecialDegree> {
    prop_oneof![
        (1i64..=6).prop_flat_map(|d| (Just(d), 1..=d))
            .prop_map(|(d, k)| SpecialDegree::BlowupOnePoint { d, k }),
        (2i64..=6)
            .prop_flat_map(|d| (Just(d), 1..d))
            .prop_flat_map(|(d, k1)| (Just(d), Just(k1), 1..=(d - k1)))
            .prop_map(|(d, k1, k2)| SpecialDegree::BlowupTwoPoints { d, k1, k2 }),
        (2i64..=7).prop_map(|d| SpecialDegree::BoxDegree { d }),
        (1i64..=7).prop_map(|d| SpecialDegree::BlowupOnePointWeightTwo { d }),
    ]
}

/// End-weight lists with at most one fixed end, total weight 1..=6.
fn rel_inputs() -> impl Strategy<Value = (i64, Vec<i64>, Vec<i64>)> {
    (
        prop::option::of(1i64..=3),
        prop::collection::vec(1i64..=3, 0..=4),
    )
        .prop_filter_map("total weight must be positive", |(alpha, beta)| {
            let d: i64 = alpha.iter().chain(beta.iter()).sum();
            if d == 0 {
                return None;
            }
            (d <= 6).then(|| (d, alpha.into_iter().collect(), beta))
        })
}

fn invariant_key() -> impl Strategy<Value = InvariantKey> {
    prop_oneof![
        (1i64..=9).prop_map(|d| InvariantKey::n(d).unwrap()),
        rel_inputs().prop_map(|(d, a, b)| InvariantKey::rel(d, a, b).unwrap()),
        special_degree().prop_map(|sd| InvariantKey::special(sd).unwrap()),
        (1i64..=9, 0i64..=9).prop_map(|(d, k)| InvariantKey::psi_p(d, k).unwrap()),
        (1i64..=9, 0i64..=9).prop_map(|(d, k)| InvariantKey::psi_l(d, k).unwrap()),
        (1i64..=9).prop_map(|d| InvariantKey::psi_ll(d).unwrap()),
        (
            0i64..=3,
            prop::collection::vec((0i64..=4, class()), 1..=5),
        )
            .prop_map(|(d, ins)| {
                let insertions = ins.into_iter().map(|(p, c)| Insertion::new(p, c)).collect();
                InvariantKey::Correlator(Correlator::new(d, insertions).unwrap())
            }),
    ]
}

proptest! {
    #[test]
    fn key_display_then_parse_is_identity(key in invariant_key()) {
        let s = key.to_string();
        let back: InvariantKey = s.parse().unwrap();
        prop_assert_eq!(&back, &key);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn key_canonical_form_ignores_input_order(
        (d, alpha, mut beta) in rel_inputs(),
        d_corr in 0i64..=3,
        mut ins in prop::collection::vec((0i64..=4, class()), 1..=5),
    ) {
        let sorted = InvariantKey::rel(d, alpha.clone(), beta.clone()).unwrap();
        beta.reverse();
        let reversed = InvariantKey::rel(d, alpha, beta).unwrap();
        prop_assert_eq!(&sorted, &reversed);
        prop_assert_eq!(sorted.to_string(), reversed.to_string());

        let build = |ins: &[(i64, Class)]| {
            let v = ins.iter().map(|&(p, c)| Insertion::new(p, c)).collect();
            Correlator::new(d_corr, v).unwrap()
        };
        let forward = build(&ins);
        ins.reverse();
        let backward = build(&ins);
        prop_assert_eq!(forward.to_string(), backward.to_string());
        prop_assert_eq!(forward, backward);
    }
}

proptest! {
    // Relative counts enumerate diagrams with positive integer multiplicities,
    // so every value must be a nonnegative integer whichever ends are fixed.
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn relative_counts_are_counting_numbers((d, alpha, beta) in rel_inputs()) {
        prop_assume!(d <= 5);
        let value = ENGINE.rel(d, alpha, beta).unwrap();
        prop_assert!(is_counting_number(&value), "got {}", value);
    }
}

/// Point-insertion lists whose ψ-powers spend the full dimension budget.
fn gated_point_correlator() -> impl Strategy<Value = Correlator> {
    (1i64..=2)
        .prop_flat_map(|d| (Just(d), 1..=(3 * d - 1)))
        .prop_flat_map(|(d, n)| {
            (
                Just(d),
                Just(n),
                prop::collection::vec(0i64..=5, (n - 1) as usize),
            )
        })
        .prop_filter_map("psi powers must fit the budget", |(d, n, rest)| {
            let last = (3 * d - 1 - n) - rest.iter().sum::<i64>();
            if last < 0 {
                return None;
            }
            let mut ks = rest;
            ks.push(last);
            let ins = ks.into_iter().map(|k| Insertion::new(k, Class::Point)).collect();
            Some(Correlator::new(d, ins).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn descendant_value_is_strategy_independent(corr in gated_point_correlator()) {
        let a = DescendantEvaluator::with_strategy(TrrStrategy::Canonical).evaluate(&corr);
        let b = DescendantEvaluator::with_strategy(TrrStrategy::Alternative).evaluate(&corr);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn point_descendant_vanishes_beyond_budget(d in 1i64..=4, extra in 0i64..=5) {
        let k = 3 * d - 1 + extra;
        prop_assert_eq!(ENGINE.psi_p(d, k).unwrap(), Rational::zero());
        prop_assert_eq!(ENGINE.psi_p(d, -1 - extra).unwrap(), Rational::zero());
    }

    #[test]
    fn line_descendant_seed_is_degree_times_count(d in 1i64..=6) {
        let expected = Rational::from(d) * ENGINE.n(d).unwrap();
        prop_assert_eq!(ENGINE.psi_l(d, 0).unwrap(), expected);
    }
}

#[test]
fn maximal_psi_power_point_descendant_is_inverse_factorial_cube() {
    for d in 1..=3i64 {
        let cube = factorial(d as u64).pow(3);
        let expected = Rational::new(BigInt::one(), cube);
        assert_eq!(ENGINE.psi_p(d, 3 * d - 2).unwrap(), expected, "d = {}", d);
    }
}

#[test]
fn fixing_a_weight_one_end_reproduces_the_plane_count() {
    for d in 1..=5i64 {
        assert_eq!(ENGINE.n_fixed(d, 1).unwrap(), ENGINE.n(d).unwrap(), "d = {}", d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn cache_file_round_trips_random_entries(
        entries in prop::collection::btree_map(
            invariant_key().prop_map(|k| k.to_string()),
            rational(),
            0..=12,
        ),
    ) {
        let store = planecount::cache::CacheStore::new();
        for (key, value) in &entries {
            store.insert(key.clone(), value.clone());
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        store.save(&path).unwrap();
        let loaded = planecount::cache::CacheStore::load(&path).unwrap();
        prop_assert_eq!(loaded.len(), entries.len());
        for (key, value) in &entries {
            let got = loaded.get(key);
            prop_assert_eq!(got.as_ref(), Some(value));
        }
    }
}
