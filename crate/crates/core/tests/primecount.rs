mod common;

use common::{is_prime_trial, mobius_trial};
use prime_density::primecount::{
    mobius, mobius_sieve, prime_pi_fast, prime_pi_sieve, sieve_primes, PiSource, SieveConfig,
};
use proptest::prelude::*;

#[test]
fn sieve_and_counter_agree_exhaustively_to_two_thousand() {
    let cfg = SieveConfig::default();
    let mut running = 0;
    for x in 0..=2000u64 {
        if is_prime_trial(x) {
            running += 1;
        }
        assert_eq!(prime_pi_sieve(x, &cfg).unwrap().count, running, "sieve x={x}");
        assert_eq!(prime_pi_fast(x).unwrap().count, running, "fast x={x}");
    }
}

#[test]
fn primes_below_500_by_trial_division() {
    let want = (0..=500).filter(|&n| is_prime_trial(n)).count() as u64;
    assert_eq!(want, 95);
    assert_eq!(prime_pi_sieve(500, &SieveConfig::default()).unwrap().count, 95);
}

#[test]
fn sources_are_tagged() {
    let cfg = SieveConfig::default();
    assert_eq!(prime_pi_sieve(100, &cfg).unwrap().source, PiSource::Sieved);
    assert_eq!(prime_pi_fast(100).unwrap().source, PiSource::Combinatorial);
    assert_eq!(prime_pi_sieve(100, &cfg).unwrap().count, 25);
    assert_eq!(prime_pi_fast(13).unwrap().count, 6);
}

#[test]
fn spot_checks_at_large_powers() {
    let cfg = SieveConfig::default();
    for (x, want) in [(100_000_000u64, 5_761_455u64), (1_000_000_000, 50_847_534)] {
        assert_eq!(prime_pi_sieve(x, &cfg).unwrap().count, want);
        assert_eq!(prime_pi_fast(x).unwrap().count, want);
    }
}

#[test]
fn table_membership_matches_trial_division() {
    let t = sieve_primes(20_000, &SieveConfig::default()).unwrap();
    for n in 0..=20_000 {
        assert_eq!(t.contains(n), is_prime_trial(n), "n={n}");
    }
}

#[test]
fn mobius_sieve_matches_pointwise_to_1e5() {
    let mu = mobius_sieve(100_000).unwrap();
    for n in 1..=100_000u64 {
        assert_eq!(mu[n as usize - 1], mobius_trial(n), "n={n}");
    }
}

#[test]
fn mertens_bound() {
    let m: i64 = mobius_sieve(10_000).unwrap().iter().map(|&v| v as i64).sum();
    assert!((m.abs() as f64) <= 2.0 * (10_000f64).sqrt());
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #[test]
    fn sieve_equals_counter(x in 2u64..1_000_000) {
        let cfg = SieveConfig::default();
        prop_assert_eq!(prime_pi_sieve(x, &cfg).unwrap().count, prime_pi_fast(x).unwrap().count);
    }

    #[test]
    fn count_bounded_and_monotone(x in 1u64..100_000, dx in 0u64..1000) {
        let cfg = SieveConfig::default();
        let a = prime_pi_sieve(x, &cfg).unwrap().count;
        let b = prime_pi_sieve(x + dx, &cfg).unwrap().count;
        prop_assert!(a <= x);
        prop_assert!(a <= b);
    }

    #[test]
    fn mobius_multiplicative(m in 1u64..10_000, n in 1u64..10_000) {
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(mobius(m * n).unwrap(), mobius(m).unwrap() * mobius(n).unwrap());
    }

    #[test]
    fn mobius_matches_oracle(n in 1u64..10_000_000) {
        prop_assert_eq!(mobius(n).unwrap(), mobius_trial(n));
    }
}
