use std::cell::RefCell;

use prime_density::fmodel::{build_dataset, f_exact, scan_discontinuities, Provenance};
use prime_density::paper_data::TABLE1;
use prime_density::primecount::{prime_pi_fast, sieve_primes, SieveConfig};

#[test]
fn scan_equals_sieve_on_range() {
    let cfg = SieveConfig::default();
    let primes: Vec<u64> = sieve_primes(100_000, &cfg).unwrap().iter().filter(|&p| p >= 3).collect();
    assert_eq!(scan_discontinuities(3, 100_000, &cfg).unwrap(), primes);
}

#[test]
fn scan_capacity_error() {
    let cfg = SieveConfig { max_limit: 1000, ..SieveConfig::default() };
    assert!(scan_discontinuities(2, 1001, &cfg).is_err());
}

#[test]
fn table_one_to_eight_decimals() {
    for n in 2..=10u32 {
        let pi = prime_pi_fast(10u64.pow(n)).unwrap().count;
        let f = f_exact(10f64.powi(n as i32), pi).unwrap();
        assert!((f - TABLE1[n as usize - 1].1).abs() < 1e-8, "n={n}: {f}");
    }
}

#[test]
fn dataset_is_independent_of_call_order() {
    let calls = RefCell::new(Vec::new());
    let source = |n: u32| {
        calls.borrow_mut().push(n);
        prime_pi_fast(10u64.pow(n)).ok()
    };
    let a = build_dataset(8, source).unwrap();
    // a source that answers from a precomputed, reversed cache
    let cache: Vec<_> = (1..=8u32).rev().map(|n| (n, prime_pi_fast(10u64.pow(n)).unwrap())).collect();
    let b = build_dataset(8, |n| cache.iter().find(|(k, _)| *k == n).map(|(_, v)| *v)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, build_dataset(8, |n| prime_pi_fast(10u64.pow(n)).ok()).unwrap());
    assert!(a.samples().iter().all(|s| s.provenance == Provenance::ComputedFromPi));
}

#[test]
fn tail_rows_decrease_toward_limit() {
    let ds = build_dataset(22, |n| (n <= 6).then(|| prime_pi_fast(10u64.pow(n)).unwrap())).unwrap();
    let f: Vec<f64> = ds.samples().iter().map(|s| s.f).collect();
    for w in f[4..].windows(2) {
        assert!(w[1] < w[0]);
    }
    assert!(f.iter().skip(4).all(|&v| v > 0.98));
}
