//! Closed-form and series estimators of π(x).

mod li;
mod riemann;

pub use li::{li, ASYMPTOTIC_CROSSOVER, EULER_GAMMA};
pub use riemann::{
    default_mobius_terms, riemann_r, riemann_r_gram, riemann_r_mobius, zeta_at_successor,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Legendre's constant B in x / (ln x − B).
pub const LEGENDRE_B: f64 = 1.80366;

/// Parameters of the correction model f̂(y) = a/y + b·e^{c·y} + d, y = log₁₀ x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl FitParams {
    /// The published fit: 0.7013/y − 4.964·e^{−0.9677 y} + 0.98.
    pub const PAPER: FitParams = FitParams { a: 0.7013, b: -4.964, c: -0.9677, d: 0.98 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        FitParams { a, b, c, d }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(p: [f64; 4]) -> Self {
        FitParams { a: p[0], b: p[1], c: p[2], d: p[3] }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// f̂ without the domain check.
    #[inline]
    pub fn eval(&self, y: f64) -> f64 {
        self.a / y + self.b * (self.c * y).exp() + self.d
    }

    /// ∂f̂/∂(a, b, c, d) at y.
    pub fn gradient(&self, y: f64) -> [f64; 4] {
        let e = (self.c * y).exp();
        [1.0 / y, e, self.b * y * e, 1.0]
    }
}

impl Default for FitParams {
    fn default() -> Self {
        FitParams::PAPER
    }
}

fn require_above_one(x: f64, what: &str) -> Result<()> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{what} requires finite x > 1, got {x}")));
    }
    Ok(())
}

/// x / ln x.
pub fn gauss_ratio(x: f64) -> Result<f64> {
    require_above_one(x, "gauss_ratio")?;
    Ok(x / x.ln())
}

/// x / (ln x − B).
pub fn legendre(x: f64, b: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("legendre requires finite x > 0, got {x}")));
    }
    let den = x.ln() - b;
    if den == 0.0 {
        return Err(Error::Pole(format!("ln x equals B = {b} at x = {x}")));
    }
    Ok(x / den)
}

/// The correction model f̂(y) at y = log₁₀ x.
pub fn f_hat(y: f64, params: &FitParams) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("f_hat requires y > 0, got {y}")));
    }
    Ok(params.eval(y))
}

/// x / (ln x − f̂(log₁₀ x)).
pub fn conjecture_pi(x: f64, params: &FitParams) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!("conjecture_pi requires finite x >= 2, got {x}")));
    }
    let den = x.ln() - f_hat(x.log10(), params)?;
    if !(den > 0.0) {
        return Err(Error::Pole(format!("ln x - f_hat(log10 x) = {den} at x = {x}")));
    }
    Ok(x / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxKind {
    GaussRatio,
    Legendre,
    LogIntegral,
    RiemannR,
    ConjectureFit,
}

/// One of the five estimators compared in the tables, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApproxMethod {
    GaussRatio,
    Legendre { b: f64 },
    LogIntegral,
    RiemannR,
    ConjectureFit { params: FitParams },
}

impl ApproxMethod {
    pub fn legendre() -> Self {
        ApproxMethod::Legendre { b: LEGENDRE_B }
    }

    pub fn conjecture() -> Self {
        ApproxMethod::ConjectureFit { params: FitParams::PAPER }
    }

    pub fn kind(&self) -> ApproxKind {
        match self {
            ApproxMethod::GaussRatio => ApproxKind::GaussRatio,
            ApproxMethod::Legendre { .. } => ApproxKind::Legendre,
            ApproxMethod::LogIntegral => ApproxKind::LogIntegral,
            ApproxMethod::RiemannR => ApproxKind::RiemannR,
            ApproxMethod::ConjectureFit { .. } => ApproxKind::ConjectureFit,
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match *self {
            ApproxMethod::GaussRatio => gauss_ratio(x),
            ApproxMethod::Legendre { b } => legendre(x, b),
            ApproxMethod::LogIntegral => li(x),
            ApproxMethod::RiemannR => riemann_r(x),
            ApproxMethod::ConjectureFit { params } => conjecture_pi(x, &params),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_ratio(1000.0).unwrap().round(), 145.0);
        assert!(close(gauss_ratio(1000.0).unwrap(), 144.764_827_301_083_76, 1e-14));
        assert_eq!(gauss_ratio(1e10).unwrap().round(), 434_294_482.0);
        assert!(close(gauss_ratio(E).unwrap(), E, 1e-15));
        assert!(gauss_ratio(1.0).is_err());
    }

    #[test]
    fn legendre_examples() {
        let v = legendre(10.0, LEGENDRE_B).unwrap();
        assert_eq!(v.round(), 20.0);
        // 100 / (ln 100 − 1.80366) = 35.69..., not the printed 37
        assert_eq!(legendre(100.0, LEGENDRE_B).unwrap().round(), 36.0);
        for x in [1.5, 10.0, 1e5, 1e22] {
            assert_eq!(legendre(x, 0.0).unwrap(), gauss_ratio(x).unwrap());
        }
        assert!(matches!(legendre(1.0, 0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn f_hat_examples() {
        let p = FitParams::PAPER;
        assert!(close(f_hat(3.0, &p).unwrap(), 0.941_476_810_566_343_7, 1e-14));
        assert!(close(f_hat(1.0, &p).unwrap(), -0.204_801_249_102_905_33, 1e-14));
        assert!((f_hat(1e9, &p).unwrap() - 0.98).abs() < 1e-8);
        assert!(f_hat(0.0, &p).is_err());
        assert!(f_hat(-1.0, &p).is_err());
    }

    #[test]
    fn conjecture_examples() {
        let p = FitParams::PAPER;
        assert_eq!(conjecture_pi(1000.0, &p).unwrap().round(), 168.0);
        assert_eq!(conjecture_pi(1e10, &p).unwrap().round(), 455_041_197.0);
        for x in [2.5, 10.0, 1234.5, 1e15] {
            let v = conjecture_pi(x, &p).unwrap();
            let den = x.ln() - f_hat(x.log10(), &p).unwrap();
            assert!(close(v * den, x, 1e-15));
        }
        let blowup = FitParams { d: 10.0, ..p };
        assert!(matches!(conjecture_pi(100.0, &blowup), Err(Error::Pole(_))));
    }

    #[test]
    fn method_dispatch() {
        assert_eq!(ApproxMethod::RiemannR.evaluate(1000.0).unwrap().round(), 168.0);
        assert_eq!(ApproxMethod::legendre().evaluate(10.0).unwrap().round(), 20.0);
        assert_eq!(ApproxMethod::legendre().kind(), ApproxKind::Legendre);
    }
}
