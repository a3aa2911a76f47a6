//! Command-line front end. [`run`] is the whole program minus process
//! exit, so tests drive it in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{ApproxMethod, FitParams, LEGENDRE_B};
use crate::error::{Error, Result};
use crate::fitting::{fit_lm, FitOptions, FitResult};
use crate::fmodel::{figure_points, residual_table, scan_discontinuities, FDataset, SignAtTen};
use crate::numfmt;
use crate::primecount::{prime_pi_fast, prime_pi_sieve, PiValue, SieveConfig, FAST_MAX, SIEVE_CROSSOVER};
use crate::report::{ComparisonReport, TableId, TableOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Auto,
    Sieve,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Gauss,
    Legendre,
    Li,
    RiemannR,
    Conjecture,
}

#[derive(Debug, Parser)]
#[command(name = "prime-density", version, about = "Exact prime counts, pi(x) estimators and the f(x) correction fit")]
pub struct Cli {
    /// Output format (default depends on the command).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Leave timings out of the output.
    #[arg(long, global = true)]
    pub no_timing: bool,

    /// Largest x accepted for exact counting.
    #[arg(long, global = true, default_value_t = FAST_MAX)]
    pub max_x_cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact pi(x), the number of primes <= x.
    Count {
        x: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: CountMethod,
    },
    /// Evaluate one estimator of pi(x).
    Approx {
        /// Real x; `e` is accepted for Euler's number.
        #[arg(value_parser = parse_real)]
        x: f64,
        #[arg(long, value_enum, default_value = "riemann-r")]
        method: MethodArg,
        /// Legendre's constant B.
        #[arg(long, default_value_t = LEGENDRE_B)]
        legendre_b: f64,
        /// Correction model parameters a,b,c,d.
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: Option<FitParams>,
    },
    /// Recompute a published table (1, 2 or 3) and list its errata.
    Table {
        id: u8,
        /// Highest exponent for exact counts in table 1.
        #[arg(long, default_value_t = 13)]
        max_exact_exponent: u32,
    },
    /// Fit the correction model by Levenberg-Marquardt.
    Fit {
        /// Fit the printed +0.19741491 at x = 10.
        #[arg(long, conflicts_with = "corrected")]
        use_paper_sign: bool,
        /// Fit the corrected -0.19741491 at x = 10 (default).
        #[arg(long)]
        corrected: bool,
        /// CSV dataset with y and f columns instead of table I.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Starting parameters a,b,c,d.
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true, default_value = "1,-1,-1,1")]
        init: FitParams,
        #[arg(long, default_value_t = 200)]
        max_iterations: usize,
        #[arg(long, default_value_t = 1e-10)]
        gradient_tolerance: f64,
        #[arg(long, default_value_t = 1e-3)]
        initial_damping: f64,
    },
    /// List the integers in [lo, hi] where f(x) jumps.
    Scan {
        lo: u64,
        hi: u64,
        /// Emit (x, f(x), f(x-)) rows for plotting instead of the jump list.
        #[arg(long)]
        emit_figure_data: bool,
    },
}

fn parse_real(s: &str) -> std::result::Result<f64, String> {
    match s {
        "e" => Ok(std::f64::consts::E),
        _ => s.parse::<f64>().map_err(|e| format!("{e}")),
    }
}

fn parse_params(s: &str) -> std::result::Result<FitParams, String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    match v[..] {
        [a, b, c, d] => Ok(FitParams::new(a, b, c, d)),
        _ => Err(format!("expected 4 comma-separated values a,b,c,d, got {}", v.len())),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code: 0 success, 1 usage error, 2 domain or
/// capacity error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cap = cli.max_x_cap.min(FAST_MAX);
    let sieve = SieveConfig::from_env();
    match &cli.command {
        Command::Count { x, method } => cmd_count(cli, out, *x, *method, cap, &sieve),
        Command::Approx { x, method, legendre_b, params } => {
            let method = match method {
                MethodArg::Gauss => ApproxMethod::GaussRatio,
                MethodArg::Legendre => ApproxMethod::Legendre { b: *legendre_b },
                MethodArg::Li => ApproxMethod::LogIntegral,
                MethodArg::RiemannR => ApproxMethod::RiemannR,
                MethodArg::Conjecture => ApproxMethod::ConjectureFit {
                    params: params.unwrap_or(FitParams::PAPER),
                },
            };
            cmd_approx(cli, out, *x, method)
        }
        Command::Table { id, max_exact_exponent } => {
            let opts = TableOptions {
                max_exact_exponent: *max_exact_exponent,
                max_x: cap,
                sieve,
                ..TableOptions::default()
            };
            let report = ComparisonReport::build(TableId::from_number(*id)?, &opts)?;
            let text = match cli.format.unwrap_or(Format::Markdown) {
                Format::Csv => report.to_csv()?,
                Format::Json => report.to_json()? + "\n",
                Format::Markdown => report.to_markdown(),
            };
            out.write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Fit {
            use_paper_sign,
            corrected: _,
            data,
            init,
            max_iterations,
            gradient_tolerance,
            initial_damping,
        } => {
            let options = FitOptions {
                max_iterations: *max_iterations,
                gradient_tolerance: *gradient_tolerance,
                initial_damping: *initial_damping,
                ..FitOptions::default()
            };
            options.validate()?;
            let (dataset, label) = match data {
                Some(path) => (FDataset::read_csv(std::fs::File::open(path)?)?, path.display().to_string()),
                None if *use_paper_sign => {
                    (FDataset::paper_table1(SignAtTen::AsPrinted), "table-1-printed-sign".to_string())
                }
                None => (FDataset::paper_table1(SignAtTen::Corrected), "table-1-corrected".to_string()),
            };
            cmd_fit(cli, out, &dataset, label, *init, &options)
        }
        Command::Scan { lo, hi, emit_figure_data } => {
            if *hi > cap {
                return Err(Error::Capacity { requested: *hi, limit: cap, hint: " (--max-x-cap)" });
            }
            if *emit_figure_data {
                cmd_figure(cli, out, *lo, *hi, &sieve)
            } else {
                let primes = scan_discontinuities(*lo, *hi, &sieve)?;
                match cli.format {
                    Some(Format::Json) => writeln!(out, "{}", serde_json::to_string(&primes)?)?,
                    Some(Format::Csv) => {
                        writeln!(out, "x")?;
                        for p in &primes {
                            writeln!(out, "{p}")?;
                        }
                    }
                    _ => {
                        if !primes.is_empty() {
                            let line: Vec<String> = primes.iter().map(u64::to_string).collect();
                            writeln!(out, "{}", line.join(" "))?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Serialize)]
struct CountOutput {
    x: u64,
    count: u64,
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_seconds: Option<f64>,
}

fn cmd_count(cli: &Cli, out: &mut dyn Write, x: u64, method: CountMethod, cap: u64, sieve: &SieveConfig) -> Result<()> {
    if x > cap {
        return Err(Error::Capacity { requested: x, limit: cap, hint: " (--max-x-cap)" });
    }
    let start = Instant::now();
    let pi: PiValue = match method {
        CountMethod::Sieve => prime_pi_sieve(x, sieve)?,
        CountMethod::Fast => prime_pi_fast(x)?,
        CountMethod::Auto if x <= SIEVE_CROSSOVER => prime_pi_sieve(x, sieve)?,
        CountMethod::Auto => prime_pi_fast(x)?,
    };
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_secs_f64());
    let o = CountOutput { x, count: pi.count, source: pi.source.to_string(), elapsed_seconds: elapsed };
    match cli.format {
        Some(Format::Json) => writeln!(out, "{}", serde_json::to_string(&o)?)?,
        Some(Format::Csv) => {
            match elapsed {
                Some(t) => writeln!(out, "x,count,source,elapsed_seconds\n{},{},{},{}", o.x, o.count, o.source, numfmt::real(t))?,
                None => writeln!(out, "x,count,source\n{},{},{}", o.x, o.count, o.source)?,
            }
        }
        _ => {
            writeln!(out, "{}", o.count)?;
            writeln!(out, "source: {}", o.source)?;
            if let Some(t) = elapsed {
                writeln!(out, "elapsed: {t:.3} s")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ApproxOutput {
    x: f64,
    method: crate::approx::ApproxKind,
    value: f64,
    rounded: i64,
}

fn cmd_approx(cli: &Cli, out: &mut dyn Write, x: f64, method: ApproxMethod) -> Result<()> {
    let value = method.evaluate(x)?;
    let o = ApproxOutput { x, method: method.kind(), value, rounded: numfmt::round_half_away(value) };
    match cli.format {
        Some(Format::Json) => writeln!(out, "{}", serde_json::to_string(&o)?)?,
        Some(Format::Csv) => writeln!(
            out,
            "x,method,value,rounded\n{},{},{},{}",
            numfmt::real(x),
            serde_json::to_value(o.method)?.as_str().unwrap_or_default(),
            numfmt::real(value),
            o.rounded
        )?,
        _ => {
            writeln!(out, "{}", o.rounded)?;
            writeln!(out, "value: {}", numfmt::real(value))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FitOutput<'a> {
    dataset: String,
    samples: usize,
    #[serde(flatten)]
    result: &'a FitResult,
    paper_params_sse: f64,
}

fn cmd_fit(
    cli: &Cli,
    out: &mut dyn Write,
    dataset: &FDataset,
    label: String,
    init: FitParams,
    options: &FitOptions,
) -> Result<()> {
    let result = fit_lm(dataset, init, options)?;
    let baseline = residual_table(dataset, &FitParams::PAPER)?.sse;
    match cli.format {
        Some(Format::Csv) => {
            writeln!(out, "parameter,value,standard_error")?;
            let names = ["a", "b", "c", "d"];
            for (i, v) in result.params.to_array().iter().enumerate() {
                let se = result.standard_errors.map(|s| numfmt::real(s[i])).unwrap_or_default();
                writeln!(out, "{},{},{}", names[i], numfmt::real(*v), se)?;
            }
        }
        Some(Format::Markdown) => {
            writeln!(out, "| parameter | value | standard error |\n|---|---|---|")?;
            let names = ["a", "b", "c", "d"];
            for (i, v) in result.params.to_array().iter().enumerate() {
                let se = result.standard_errors.map(|s| numfmt::real(s[i])).unwrap_or_else(|| "-".into());
                writeln!(out, "| {} | {} | {} |", names[i], numfmt::real(*v), se)?;
            }
            writeln!(
                out,
                "\nSSE {} (published parameters: {}), {} iterations, converged: {}",
                numfmt::real(result.sse),
                numfmt::real(baseline),
                result.iterations,
                result.converged
            )?;
        }
        _ => {
            let o = FitOutput { dataset: label, samples: dataset.len(), result: &result, paper_params_sse: baseline };
            writeln!(out, "{}", serde_json::to_string_pretty(&o)?)?;
        }
    }
    Ok(())
}

fn cmd_figure(cli: &Cli, out: &mut dyn Write, lo: u64, hi: u64, sieve: &SieveConfig) -> Result<()> {
    let points = figure_points(lo, hi, sieve)?;
    if cli.format == Some(Format::Json) {
        #[derive(Serialize)]
        struct P {
            x: u64,
            f: f64,
            f_left: Option<f64>,
        }
        let v: Vec<P> = points.iter().map(|p| P { x: p.x, f: p.f, f_left: p.f_left }).collect();
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
        return Ok(());
    }
    writeln!(out, "x,f,f_left")?;
    for p in points {
        writeln!(out, "{},{},{}", p.x, numfmt::real(p.f), p.f_left.map(numfmt::real).unwrap_or_default())?;
    }
    Ok(())
}
