//! Logarithmic integral li(x) = PV ∫₀ˣ dt / ln t.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Above this x the asymptotic expansion is used. Its smallest term at
/// ln x ≈ 41.4 is below 1e-16 relative; at smaller x the truncation error of
/// the asymptotic series exceeds 1e-12, so the convergent series is kept.
pub const ASYMPTOTIC_CROSSOVER: f64 = 1e18;

/// Principal-value logarithmic integral for x > 1.
pub fn li(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("li requires finite x > 1, got {x}")));
    }
    if x > ASYMPTOTIC_CROSSOVER {
        Ok(li_asymptotic(x))
    } else {
        Ok(li_ramanujan(x.ln()))
    }
}

/// li(e^u) for u > 0; lets callers pass ln x directly and skip a rounding
/// step in `exp(u).ln()`.
pub(crate) fn li_of_log(u: f64) -> f64 {
    if u > ASYMPTOTIC_CROSSOVER.ln() {
        li_asymptotic(u.exp())
    } else {
        li_ramanujan(u)
    }
}

/// Ramanujan's series
/// li(x) = γ + ln u + √x Σₙ (−1)ⁿ⁻¹ uⁿ / (n! 2ⁿ⁻¹) Σ_{k<=(n−1)/2} 1/(2k+1),
/// with u = ln x.
fn li_ramanujan(u: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0; // (−1)^(n−1) u^n / (n! 2^(n−1)) built incrementally
    let mut inner = 0.0; // Σ 1/(2k+1), k = 0..=(n−1)/2
    let mut k_next = 0u32;
    for n in 1..400u32 {
        term *= if n == 1 { u } else { -u / (2.0 * n as f64) };
        while 2 * k_next < n {
            inner += 1.0 / (2 * k_next + 1) as f64;
            k_next += 1;
        }
        let add = term * inner;
        sum += add;
        if n as f64 > u && add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + u.ln() + (u / 2.0).exp() * sum
}

/// li(x) ~ (x / u) Σ k! / u^k, truncated just before the smallest term.
fn li_asymptotic(x: f64) -> f64 {
    let u = x.ln();
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..(u as usize) {
        let next = term * k as f64 / u;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 {
            break;
        }
    }
    x / u * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // reference values from a 40-digit evaluation
    const REFERENCE: &[(f64, f64)] = &[
        (1.5, 0.125_064_986_315_296_36),
        (2.0, 1.045_163_780_117_493),
        (10.0, 6.165_599_504_787_298),
        (100.0, 30.126_141_584_079_63),
        (1000.0, 177.609_657_990_152_23),
        (1e4, 1246.137_215_899_388_5),
        (1e6, 78627.549_159_462_18),
        (1e10, 455_055_614.586_623_1),
        (1e15, 29_844_571_475_287.58),
        (1e17, 2_623_557_165_610_821.8),
        (1e18, 24_739_954_309_690_415.0),
        (2e18, 48_645_161_311_550_307.0),
        (1e20, 2_220_819_602_783_663_483.5),
        (1e22, 2.014_672_866_912_482_6e20),
    ];

    #[test]
    fn matches_reference_to_1e12() {
        for &(x, want) in REFERENCE {
            let got = li(x).unwrap();
            assert!(rel(got, want) < 1e-12, "li({x}) = {got}, want {want}, rel {}", rel(got, want));
        }
    }

    #[test]
    fn crossover_is_continuous() {
        let below = li_ramanujan(ASYMPTOTIC_CROSSOVER.ln());
        let above = li_asymptotic(ASYMPTOTIC_CROSSOVER);
        assert!(rel(below, above) < 1e-13);
    }

    #[test]
    fn domain() {
        assert!(li(1.0).is_err());
        assert!(li(0.5).is_err());
        assert!(li(f64::NAN).is_err());
    }

    #[test]
    fn table_roundings() {
        assert_eq!(li(100.0).unwrap().round(), 30.0);
        assert_eq!(li(1000.0).unwrap().round(), 178.0);
    }
}
