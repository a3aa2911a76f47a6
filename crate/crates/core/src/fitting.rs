//! Levenberg–Marquardt fit of f̂(y) = a/y + b·e^{c·y} + d.
//!
//! Additive damping on the diagonal of the Gauss–Newton normal equations;
//! a step is accepted only when it strictly lowers the sum of squared
//! residuals. The Jacobian is taken by central differences.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::approx::FitParams;
use crate::error::{Error, Result};
use crate::fmodel::FDataset;

/// Damping above which the solver gives up.
pub const MAX_DAMPING: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Convergence threshold on ‖Jᵀr‖∞.
    pub gradient_tolerance: f64,
    pub initial_damping: f64,
    pub damping_up: f64,
    pub damping_down: f64,
    /// Central-difference step, relative to max(|p|, 1).
    pub jacobian_step: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_iterations: 200,
            gradient_tolerance: 1e-10,
            initial_damping: 1e-3,
            damping_up: 10.0,
            damping_down: 0.1,
            jacobian_step: 1e-6,
        }
    }
}

impl FitOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations < 1 {
            return Err(Error::Precondition("max_iterations must be at least 1".into()));
        }
        let positive = [
            ("gradient_tolerance", self.gradient_tolerance),
            ("initial_damping", self.initial_damping),
            ("damping_up", self.damping_up),
            ("damping_down", self.damping_down),
            ("jacobian_step", self.jacobian_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Precondition(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: FitParams,
    pub sse: f64,
    pub iterations: usize,
    pub converged: bool,
    /// √(diag((JᵀJ)⁻¹) · SSE/(n − 4)); absent with no residual degrees of
    /// freedom or a singular JᵀJ.
    pub standard_errors: Option<[f64; 4]>,
    /// SSE after each accepted step, starting with the initial SSE.
    #[serde(skip)]
    pub sse_trace: Vec<f64>,
}

fn sse(dataset: &FDataset, p: &FitParams) -> f64 {
    dataset
        .samples()
        .iter()
        .map(|s| {
            let r = p.eval(s.y) - s.f;
            r * r
        })
        .sum()
}

/// Central-difference ∂f̂/∂(a, b, c, d) at each sample, one row per sample.
/// The step for parameter j is `step · max(|p_j|, 1)`.
pub fn numeric_jacobian(dataset: &FDataset, params: &FitParams, step: f64) -> Result<Vec<[f64; 4]>> {
    if !(step > 0.0) {
        return Err(Error::Precondition(format!("jacobian step must be positive, got {step}")));
    }
    let base = params.to_array();
    let steps: [f64; 4] = std::array::from_fn(|j| step * base[j].abs().max(1.0));
    Ok(dataset
        .samples()
        .iter()
        .map(|s| {
            std::array::from_fn(|j| {
                let mut hi = base;
                let mut lo = base;
                hi[j] += steps[j];
                lo[j] -= steps[j];
                let fh = FitParams::from_array(hi).eval(s.y);
                let fl = FitParams::from_array(lo).eval(s.y);
                (fh - fl) / (hi[j] - lo[j])
            })
        })
        .collect())
}

fn normal_equations(jac: &[[f64; 4]], residuals: &[f64]) -> (Matrix4<f64>, Vector4<f64>) {
    let mut jtj = Matrix4::zeros();
    let mut jtr = Vector4::zeros();
    for (row, &r) in jac.iter().zip(residuals) {
        let v = Vector4::from(*row);
        jtj += v * v.transpose();
        jtr += v * r;
    }
    (jtj, jtr)
}

/// SSE(next) − SSE(p), formed from per-sample model differences so that
/// changes far below the rounding error of the SSE itself keep their sign.
fn sse_change(dataset: &FDataset, p: &FitParams, next: &FitParams, r: &[f64]) -> f64 {
    dataset
        .samples()
        .iter()
        .zip(r)
        .map(|(s, &ri)| {
            let y = s.y;
            let e = (p.c * y).exp();
            let e_next = (next.c * y).exp();
            let dr = (next.a - p.a) / y
                + (next.b - p.b) * e_next
                + p.b * e * ((next.c - p.c) * y).exp_m1()
                + (next.d - p.d);
            dr * (2.0 * ri + dr)
        })
        .sum()
}

fn residuals(dataset: &FDataset, p: &FitParams) -> Vec<f64> {
    dataset.samples().iter().map(|s| p.eval(s.y) - s.f).collect()
}

/// Fit the correction model to `dataset` starting from `init`.
///
/// Running out of iterations is reported through `converged = false`; an
/// error is returned only for bad input or when the damping needed to make
/// progress exceeds [`MAX_DAMPING`] before the gradient test passes.
pub fn fit_lm(dataset: &FDataset, init: FitParams, options: &FitOptions) -> Result<FitResult> {
    options.validate()?;
    if dataset.len() < 4 {
        return Err(Error::Precondition(format!(
            "a 4-parameter fit needs at least 4 samples, got {}",
            dataset.len()
        )));
    }
    if !init.is_finite() {
        return Err(Error::Precondition("initial parameters must be finite".into()));
    }

    let mut p = init;
    let mut current = sse(dataset, &p);
    if !current.is_finite() {
        return Err(Error::Precondition("model is not finite at the initial parameters".into()));
    }
    let mut lambda = options.initial_damping;
    let mut trace = vec![current];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < options.max_iterations {
        let jac = numeric_jacobian(dataset, &p, options.jacobian_step)?;
        let r = residuals(dataset, &p);
        let (jtj, jtr) = normal_equations(&jac, &r);
        if jtr.amax() < options.gradient_tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        loop {
            let damped = jtj + Matrix4::identity() * lambda;
            let step = damped.cholesky().map(|c| c.solve(&(-jtr)));
            if let Some(step) = step {
                let trial = FitParams::from_array((Vector4::from(p.to_array()) + step).into());
                let change = sse_change(dataset, &p, &trial, &r);
                if change.is_finite() && change < 0.0 {
                    p = trial;
                    current = sse(dataset, &p);
                    trace.push(current);
                    lambda = (lambda * options.damping_down).max(f64::MIN_POSITIVE);
                    break;
                }
            }
            lambda *= options.damping_up;
            if lambda > MAX_DAMPING {
                // no representable descent step left: accept if already stationary
                let jac = numeric_jacobian(dataset, &p, options.jacobian_step)?;
                let (_, jtr) = normal_equations(&jac, &residuals(dataset, &p));
                if jtr.amax() < options.gradient_tolerance {
                    converged = true;
                    break;
                }
                return Err(Error::Numerical(format!(
                    "damping exceeded {MAX_DAMPING:e} after {iterations} iterations (gradient {:e})",
                    jtr.amax()
                )));
            }
        }
        if converged {
            break;
        }
    }
    if !converged && iterations == options.max_iterations {
        let jac = numeric_jacobian(dataset, &p, options.jacobian_step)?;
        let (_, jtr) = normal_equations(&jac, &residuals(dataset, &p));
        converged = jtr.amax() < options.gradient_tolerance;
    }

    let standard_errors = standard_errors(dataset, &p, current, options.jacobian_step);
    Ok(FitResult { params: p, sse: current, iterations, converged, standard_errors, sse_trace: trace })
}

fn standard_errors(dataset: &FDataset, p: &FitParams, sse: f64, step: f64) -> Option<[f64; 4]> {
    let dof = dataset.len().checked_sub(4).filter(|&d| d > 0)?;
    let jac = numeric_jacobian(dataset, p, step).ok()?;
    let (jtj, _) = normal_equations(&jac, &vec![0.0; jac.len()]);
    let cov = jtj.try_inverse()? * (sse / dof as f64);
    let se: [f64; 4] = std::array::from_fn(|i| cov[(i, i)].sqrt());
    se.iter().all(|v| v.is_finite()).then_some(se)
}
