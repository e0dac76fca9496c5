use proptest::prelude::*;

use shallow_qfa::analysis::{
    additive_energy, epsilon_of, error_prob, exp_sum, fourier_coefficient,
};
use shallow_qfa::circuit::{build_deep, build_shallow_parts, statevector, target_block};
use shallow_qfa::coeffsets::{expand_subset_sums, CoefficientSet};
use shallow_qfa::qfa::{fingerprint, initial_state, run_word};
use shallow_qfa::zmod::{is_prime, mod_inverse, mul_mod};
use shallow_qfa::PrimeModulus;

const PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 31, 61, 101, 127, 257, 1009];

fn set_strategy() -> impl Strategy<Value = CoefficientSet> {
    prop::sample::select(PRIMES).prop_flat_map(|p| {
        prop::collection::vec(0..p, 1..12)
            .prop_map(move |k| CoefficientSet::explicit(PrimeModulus::new(p).unwrap(), k).unwrap())
    })
}

proptest! {
    #[test]
    fn inverse_round_trips(p in prop::sample::select(PRIMES), a in 1u64..10_000) {
        let pm = PrimeModulus::new(p).unwrap();
        prop_assume!(a % p != 0);
        let inv = mod_inverse(a, pm).unwrap();
        prop_assert_eq!(mul_mod(a % p, inv, p), 1);
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..50_000) {
        let trial = n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0);
        prop_assert_eq!(is_prime(n), trial);
    }

    #[test]
    fn epsilon_invariant_under_affine_maps(set in set_strategy(), c in 1u64..1000) {
        let p = set.modulus();
        prop_assume!(c % p != 0);
        let eps = epsilon_of(&set).epsilon;
        prop_assert!((epsilon_of(&set.translate(c)).epsilon - eps).abs() < 1e-12);
        prop_assert!((epsilon_of(&set.dilate(c)).epsilon - eps).abs() < 1e-12);
    }

    #[test]
    fn plancherel(set in set_strategy()) {
        let p = set.modulus();
        let total: f64 = (0..p).map(|xi| fourier_coefficient(&set, xi).norm_sqr()).sum();
        let distinct = {
            let mut k = set.coefficients().to_vec();
            k.sort_unstable();
            k.dedup();
            k.len()
        };
        if distinct == set.len() {
            prop_assert!((total * p as f64 - set.len() as f64).abs() < 1e-9);
        }
        let energy = additive_energy(&set, &set).unwrap() as f64;
        let fourth: f64 = (0..p).map(|x| exp_sum(&set, x).norm_sqr().powi(2)).sum();
        prop_assert!((fourth / p as f64 - energy).abs() < 1e-6 * energy.max(1.0));
    }

    #[test]
    fn error_probability_below_epsilon(set in set_strategy()) {
        let eps = epsilon_of(&set).epsilon;
        for x in 1..set.modulus() {
            prop_assert!(error_prob(&set, x) <= eps + 1e-12);
        }
    }

    #[test]
    fn expansion_shift(t0 in 0u64..101, gens in prop::collection::vec(0u64..101, 0..6), c in 0u64..101) {
        let p = PrimeModulus::new(101).unwrap();
        let a = expand_subset_sums(t0, &gens, p).unwrap();
        let b = expand_subset_sums((t0 + c) % 101, &gens, p).unwrap();
        let shifted = a.translate(c);
        prop_assert_eq!(shifted.coefficients(), b.coefficients());
        prop_assert_eq!(a.len(), 1 << gens.len());
    }

    #[test]
    fn automaton_is_periodic_and_unitary(set in set_strategy(), j in 0u64..50) {
        let p = set.modulus();
        let mut s = initial_state(&set);
        for _ in 0..j {
            s.step();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
        prop_assert!((run_word(&set, j) - run_word(&set, j + p)).abs() < 1e-9);
        prop_assert!((run_word(&set, p) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn shallow_and_deep_fingerprints_agree(gens in prop::collection::vec(1u64..61, 1..5), t0 in 0u64..61, x in 0u64..61) {
        let p = PrimeModulus::new(61).unwrap();
        let set = expand_subset_sums(t0, &gens, p).unwrap();
        let deep = target_block(&statevector(&build_deep(&set, x)).unwrap());
        let shallow = target_block(&statevector(&build_shallow_parts(t0, &gens, 61, x)).unwrap());
        let expected = fingerprint(&set, x);
        for ((a, b), c) in deep.iter().zip(&shallow).zip(&expected) {
            prop_assert!((a - c).abs() < 1e-9 && (b - c).abs() < 1e-9);
        }
    }

    #[test]
    fn json_round_trip(set in set_strategy()) {
        let back = CoefficientSet::from_json(&set.to_json()).unwrap();
        prop_assert_eq!(back.coefficients(), set.coefficients());
        prop_assert_eq!(back.modulus(), set.modulus());
    }
}
