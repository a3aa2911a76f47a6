use crate::error::{Error, Result};

/// Largest limit accepted by [`mobius_sieve`].
pub const MOBIUS_SIEVE_MAX: u64 = 100_000_000;

/// μ(n) by trial division.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("mobius is undefined at 0".into()));
    }
    let mut m = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return Ok(0);
            }
            sign = -sign;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// μ(1..=limit) by a linear sieve. Element `i` holds μ(i + 1).
pub fn mobius_sieve(limit: u64) -> Result<Vec<i8>> {
    if limit == 0 {
        return Err(Error::Domain("mobius_sieve needs limit >= 1".into()));
    }
    if limit > MOBIUS_SIEVE_MAX {
        return Err(Error::capacity(limit, MOBIUS_SIEVE_MAX, " (mobius sieve maximum)"));
    }
    let n = limit as usize;
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu.remove(0);
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(97).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(mobius_sieve(6).unwrap(), vec![1, -1, -1, 0, -1, 1]);
        assert_eq!(mobius_sieve(1).unwrap(), vec![1]);
        assert!(mobius_sieve(0).is_err());
        assert!(matches!(mobius_sieve(MOBIUS_SIEVE_MAX + 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn mertens_at_ten_thousand() {
        let m: i64 = mobius_sieve(10_000).unwrap().iter().map(|&v| v as i64).sum();
        assert_eq!(m, -23);
        assert!((m.abs() as f64) <= 2.0 * 100.0);
    }
}
