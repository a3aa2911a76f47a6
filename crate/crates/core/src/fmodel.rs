//! The correction function f(x) = ln x − x/π(x): extraction from exact
//! counts, the Table I dataset, and the discontinuity scan.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::approx::FitParams;
use crate::error::{Error, Result};
use crate::paper_data::TABLE1;
use crate::primecount::{for_each_prime_in, prime_pi_sieve, PiValue, SieveConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ComputedFromPi,
    PaperTableI,
}

/// Which sign to use for the printed Table I value at x = 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignAtTen {
    /// ln 10 − 10/4 = −0.19741491, what the definition gives.
    #[default]
    Corrected,
    /// +0.19741491 as printed.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FSample {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub provenance: Provenance,
}

impl FSample {
    /// Sample at x = 10^exponent.
    pub fn at_power(exponent: u32, f: f64, provenance: Provenance) -> Self {
        FSample { x: 10f64.powi(exponent as i32), y: exponent as f64, f, provenance }
    }
}

/// Samples ordered by strictly increasing y.
#[derive(Debug, Clone, PartialEq)]
pub struct FDataset {
    samples: Vec<FSample>,
}

impl FDataset {
    /// Sorts by y; rejects duplicate or non-positive y and non-finite f.
    pub fn new(mut samples: Vec<FSample>) -> Result<Self> {
        if let Some(s) = samples.iter().find(|s| !(s.y > 0.0) || !s.f.is_finite() || !s.y.is_finite()) {
            return Err(Error::Precondition(format!("invalid sample y={} f={}", s.y, s.f)));
        }
        samples.sort_by(|a, b| a.y.total_cmp(&b.y));
        if let Some(w) = samples.windows(2).find(|w| w[0].y == w[1].y) {
            return Err(Error::Precondition(format!("duplicate sample at y={}", w[0].y)));
        }
        Ok(FDataset { samples })
    }

    /// The 22 printed Table I rows, with the chosen sign at x = 10.
    pub fn paper_table1(sign: SignAtTen) -> Self {
        let samples = TABLE1
            .iter()
            .map(|&(n, f)| {
                let f = if n == 1 && sign == SignAtTen::Corrected { -f } else { f };
                FSample::at_power(n, f, Provenance::PaperTableI)
            })
            .collect();
        FDataset { samples }
    }

    /// Noise-free samples of the model itself at the given y values.
    pub fn synthetic(params: &FitParams, ys: &[f64]) -> Result<Self> {
        FDataset::new(
            ys.iter()
                .map(|&y| FSample {
                    x: 10f64.powf(y),
                    y,
                    f: params.eval(y),
                    provenance: Provenance::ComputedFromPi,
                })
                .collect(),
        )
    }

    pub fn samples(&self) -> &[FSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// CSV with columns exponent, x, y, f, provenance. `exponent` is empty
    /// when y is not an integer.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["exponent", "x", "y", "f", "provenance"])?;
        for s in &self.samples {
            let exponent = if s.y.fract() == 0.0 { format!("{}", s.y as u32) } else { String::new() };
            let prov = match s.provenance {
                Provenance::ComputedFromPi => "computed_from_pi",
                Provenance::PaperTableI => "paper_table_i",
            };
            w.write_record([
                exponent,
                crate::numfmt::real(s.x),
                crate::numfmt::real(s.y),
                crate::numfmt::real(s.f),
                prov.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the CSV written by [`FDataset::write_csv`]. Only the y and f
    /// columns are required; x defaults to 10^y.
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        let col = |name: &str| headers.iter().position(|h| h.trim() == name);
        let (Some(yi), Some(fi)) = (col("y"), col("f")) else {
            return Err(Error::Precondition("dataset CSV needs 'y' and 'f' columns".into()));
        };
        let xi = col("x");
        let pi = col("provenance");
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|_| Error::Precondition(format!("bad {what} value '{s}'")))
        };
        let mut samples = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let y = parse(&rec[yi], "y")?;
            let f = parse(&rec[fi], "f")?;
            let x = match xi.map(|i| rec[i].trim()) {
                Some(s) if !s.is_empty() => parse(s, "x")?,
                _ => 10f64.powf(y),
            };
            let provenance = match pi.map(|i| rec[i].trim()) {
                Some("paper_table_i") => Provenance::PaperTableI,
                _ => Provenance::ComputedFromPi,
            };
            samples.push(FSample { x, y, f, provenance });
        }
        FDataset::new(samples)
    }
}

/// f(x) = ln x − x/π(x).
pub fn f_exact(x: f64, pi_x: u64) -> Result<f64> {
    if pi_x == 0 {
        return Err(Error::Domain("f is undefined where pi(x) = 0".into()));
    }
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!("f_exact requires finite x >= 2, got {x}")));
    }
    Ok(x.ln() - x / pi_x as f64)
}

/// Table I dataset for exponents 1..=max_exponent.
///
/// Exponents for which `pi_source` yields a count are computed from it;
/// the rest fall back to the printed Table I value (x = 10 corrected to the
/// negative sign). Exponents beyond 22 have no fallback and are skipped.
pub fn build_dataset<F>(max_exponent: u32, pi_source: F) -> Result<FDataset>
where
    F: Fn(u32) -> Option<PiValue>,
{
    if max_exponent == 0 {
        return Err(Error::Precondition("max_exponent must be at least 1".into()));
    }
    let mut samples = Vec::new();
    for n in 1..=max_exponent {
        if let Some(pi) = pi_source(n) {
            let x = 10f64.powi(n as i32);
            samples.push(FSample::at_power(n, f_exact(x, pi.count)?, Provenance::ComputedFromPi));
        } else if let Some(&(_, printed)) = TABLE1.iter().find(|(e, _)| *e == n) {
            let f = if n == 1 { -printed } else { printed };
            samples.push(FSample::at_power(n, f, Provenance::PaperTableI));
        }
    }
    FDataset::new(samples)
}

/// Integers n in [lo, hi] where x ↦ ln x − x/π(x) jumps, i.e. π(n) > π(n−1).
pub fn scan_discontinuities(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<Vec<u64>> {
    if lo < 2 {
        return Err(Error::Domain(format!("scan needs lo >= 2, got {lo}")));
    }
    if hi < lo {
        return Err(Error::Domain(format!("scan needs lo <= hi, got [{lo}, {hi}]")));
    }
    let mut jumps = Vec::new();
    walk_pi(lo, hi, cfg, |n, pi_before, pi_at| {
        if pi_at > pi_before {
            jumps.push(n);
        }
    })?;
    Ok(jumps)
}

/// Calls `visit(n, π(n−1), π(n))` for every integer n in [lo, hi].
fn walk_pi<F: FnMut(u64, u64, u64)>(lo: u64, hi: u64, cfg: &SieveConfig, mut visit: F) -> Result<()> {
    if hi > cfg.max_limit {
        return Err(Error::capacity(hi, cfg.max_limit, " (sieve capacity)"));
    }
    let mut pi = prime_pi_sieve(lo - 1, cfg)?.count;
    let mut n = lo;
    for_each_prime_in(lo, hi, cfg, |p| {
        while n < p {
            visit(n, pi, pi);
            n += 1;
        }
        visit(n, pi, pi + 1);
        pi += 1;
        n += 1;
    })?;
    while n <= hi {
        visit(n, pi, pi);
        n += 1;
    }
    Ok(())
}

/// One row of plot data: f at integer x and its left limit f(x⁻), which
/// uses π(x − 1). The left limit is absent where π(x − 1) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePoint {
    pub x: u64,
    pub f: f64,
    pub f_left: Option<f64>,
}

pub fn figure_points(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<Vec<FigurePoint>> {
    if lo < 2 || hi < lo {
        return Err(Error::Domain(format!("figure range must satisfy 2 <= lo <= hi, got [{lo}, {hi}]")));
    }
    let mut out = Vec::new();
    walk_pi(lo, hi, cfg, |n, before, at| {
        let x = n as f64;
        out.push(FigurePoint {
            x: n,
            f: x.ln() - x / at as f64,
            f_left: (before > 0).then(|| x.ln() - x / before as f64),
        });
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub y: f64,
    pub f: f64,
    pub f_hat: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualTable {
    pub rows: Vec<Residual>,
    pub sse: f64,
}

/// Per-sample residuals f − f̂ and their sum of squares.
pub fn residual_table(dataset: &FDataset, params: &FitParams) -> Result<ResidualTable> {
    if dataset.is_empty() {
        return Err(Error::Precondition("residual table of an empty dataset".into()));
    }
    let rows: Vec<Residual> = dataset
        .samples()
        .iter()
        .map(|s| {
            let f_hat = params.eval(s.y);
            Residual { y: s.y, f: s.f, f_hat, residual: s.f - f_hat }
        })
        .collect();
    let sse = rows.iter().map(|r| r.residual * r.residual).sum();
    Ok(ResidualTable { rows, sse })
}
