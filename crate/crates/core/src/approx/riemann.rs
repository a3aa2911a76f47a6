//! Riemann's R(x) = Σ μ(n)/n · li(x^{1/n}) by two independent routes.

use std::sync::OnceLock;

use super::li::{li_of_log, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::primecount::mobius_sieve;

/// Möbius terms summed explicitly in the tail of [`riemann_r`].
const TAIL_TERMS: u64 = 1 << 20;

/// Zeta values ζ(k + 1) for k = 1..=ZETA_TABLE; beyond that ζ = 1 to f64.
const ZETA_TABLE: usize = 256;

fn mobius_table() -> &'static [i8] {
    static TABLE: OnceLock<Vec<i8>> = OnceLock::new();
    TABLE.get_or_init(|| mobius_sieve(TAIL_TERMS).expect("tail size within mobius sieve capacity"))
}

fn check_domain(x: f64) -> Result<()> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!("R(x) requires finite x >= 2, got {x}")));
    }
    Ok(())
}

/// Default number of Möbius terms: ⌈log₂ x⌉ + 2, enough that x^{1/n} < 2
/// for every omitted n.
pub fn default_mobius_terms(x: f64) -> u32 {
    x.log2().ceil() as u32 + 2
}

/// Truncated Möbius sum Σ_{n<=n_max} μ(n)/n · li(x^{1/n}).
///
/// Terms with x^{1/n} < 2 are small but decay slowly; see [`riemann_r`] for
/// the completed series.
pub fn riemann_r_mobius(x: f64, n_max: u32) -> Result<f64> {
    check_domain(x)?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be positive".into()));
    }
    if n_max as u64 > TAIL_TERMS {
        return Err(Error::capacity(n_max as u64, TAIL_TERMS, " (Möbius terms)"));
    }
    Ok(mobius_head(x.ln(), n_max as usize, mobius_table()))
}

fn mobius_head(u: f64, n_max: usize, mu: &[i8]) -> f64 {
    // summed from the smallest terms up
    (1..=n_max)
        .rev()
        .filter(|&n| mu[n - 1] != 0)
        .map(|n| mu[n - 1] as f64 / n as f64 * li_of_log(u / n as f64))
        .sum()
}

/// Ein-type remainder li(e^v) − γ − ln v = Σ_k v^k / (k · k!), for small v.
fn ei_remainder(v: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..200 {
        term *= v / k as f64;
        let add = term / k as f64;
        sum += add;
        if add <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// R(x) as the full Möbius series.
///
/// The first ⌈log₂ x⌉ + 2 terms use li directly. For the remaining n,
/// li(x^{1/n}) = γ + ln ln x − ln n + E(ln x / n) with E the Ein remainder;
/// the constant and logarithmic parts sum in closed form because
/// Σ μ(n)/n = 0 and Σ μ(n) ln n / n = −1, and the E parts are summed
/// explicitly over 2^20 terms (they fall off like 1/n²).
pub fn riemann_r(x: f64) -> Result<f64> {
    check_domain(x)?;
    let u = x.ln();
    let mu = mobius_table();
    let head_n = default_mobius_terms(x) as usize;
    let head = mobius_head(u, head_n, mu);

    let mut m1 = 0.0; // Σ_{n<=N} μ(n)/n
    let mut l1 = 0.0; // Σ_{n<=N} μ(n) ln n / n
    for n in 1..=head_n {
        let m = mu[n - 1] as f64;
        if m != 0.0 {
            m1 += m / n as f64;
            l1 += m * (n as f64).ln() / n as f64;
        }
    }
    let closed = -(EULER_GAMMA + u.ln()) * m1 + 1.0 + l1;

    let remainder: f64 = (head_n + 1..=TAIL_TERMS as usize)
        .rev()
        .filter(|&n| mu[n - 1] != 0)
        .map(|n| mu[n - 1] as f64 / n as f64 * ei_remainder(u / n as f64))
        .sum();

    Ok(head + closed + remainder)
}

/// ζ(s) for integer s >= 2: direct sum to N = 16 plus an Euler–Maclaurin tail.
fn zeta_int(s: u32) -> f64 {
    const N: f64 = 16.0;
    let sf = s as f64;
    let mut head = 0.0;
    for n in (1..16).rev() {
        head += (n as f64).powf(-sf);
    }
    // Bernoulli numbers B2..B12 divided by their factorials
    const B_OVER_FACT: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    let mut tail = N.powf(1.0 - sf) / (sf - 1.0) + 0.5 * N.powf(-sf);
    // rising factorial s(s+1)...(s+2j-2) times N^{-s-2j+1}
    let mut rising = sf;
    let mut npow = N.powf(-sf - 1.0);
    for (j, c) in B_OVER_FACT.iter().enumerate() {
        tail += c * rising * npow;
        let a = sf + (2 * j + 1) as f64;
        rising *= a * (a + 1.0);
        npow /= N * N;
    }
    head + tail
}

fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=ZETA_TABLE as u32).map(|k| zeta_int(k + 1)).collect())
}

/// ζ(k + 1) for k >= 1.
pub fn zeta_at_successor(k: usize) -> f64 {
    zeta_table().get(k - 1).copied().unwrap_or(1.0)
}

/// R(x) by the Gram series 1 + Σ_k (ln x)^k / (k · k! · ζ(k+1)).
pub fn riemann_r_gram(x: f64) -> Result<f64> {
    check_domain(x)?;
    let u = x.ln();
    let mut sum = 1.0;
    let mut power = 1.0; // u^k / k!
    for k in 1..2000usize {
        power *= u / k as f64;
        let term = power / (k as f64 * zeta_at_successor(k));
        sum += term;
        if k as f64 > u && term <= 1e-17 * sum {
            break;
        }
    }
    Ok(sum)
}
