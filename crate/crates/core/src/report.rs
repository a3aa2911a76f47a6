//! Recomputation of the published comparison tables and the errata ledger.
//!
//! Every cell is recomputed from live code and compared, after rounding to
//! the printed precision, with the embedded printed value. A cell is an
//! erratum when an Exact count differs at all, or when any other column
//! differs by more than one unit in the last printed digit.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::approx::{conjecture_pi, gauss_ratio, legendre, li, riemann_r, FitParams, LEGENDRE_B};
use crate::error::{Error, Result};
use crate::fmodel::f_exact;
use crate::numfmt;
use crate::paper_data::{TABLE1, TABLE1_DECIMALS, TABLE2, TABLE3};
use crate::primecount::{prime_pi, SieveConfig, FAST_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
}

impl TableId {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(TableId::I),
            2 => Ok(TableId::II),
            3 => Ok(TableId::III),
            _ => Err(Error::Precondition(format!("unknown table {n}; expected 1, 2 or 3"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
        }
    }

    /// Printed decimal places of the table's cells.
    pub fn decimals(self) -> u32 {
        match self {
            TableId::I => TABLE1_DECIMALS,
            _ => 0,
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(TableId::I),
            "II" => Ok(TableId::II),
            "III" => Ok(TableId::III),
            _ => Err(Error::Precondition(format!("unknown table id '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    Exact,
    ThisWork,
    RiemannR,
    Li,
    Gauss,
    Legendre,
    F,
    FHat,
}

impl Column {
    const ALL: [Column; 8] = [
        Column::Exact,
        Column::ThisWork,
        Column::RiemannR,
        Column::Li,
        Column::Gauss,
        Column::Legendre,
        Column::F,
        Column::FHat,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Column::Exact => "exact",
            Column::ThisWork => "this_work",
            Column::RiemannR => "riemann_r",
            Column::Li => "li",
            Column::Gauss => "gauss",
            Column::Legendre => "legendre",
            Column::F => "f",
            Column::FHat => "f_hat",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Column::Exact => "Exact",
            Column::ThisWork => "This work",
            Column::RiemannR => "R(x)",
            Column::Li => "Li(x)",
            Column::Gauss => "x/log x",
            Column::Legendre => "x/(log x - 1.80366)",
            Column::F => "f(x)",
            Column::FHat => "fitted f",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.key() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown column '{s}'")))
    }
}

/// One recomputed cell. `rounded` and `paper` are integers in units of the
/// table's last printed digit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub column: Column,
    pub value: Option<f64>,
    pub rounded: Option<i64>,
    pub paper: Option<i64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl Cell {
    fn new(column: Column, value: Option<f64>, paper: Option<i64>, decimals: u32) -> Self {
        let rounded = value.map(|v| numfmt::round_half_away(v * 10f64.powi(decimals as i32)));
        let matches = rounded.is_some() && rounded == paper;
        Cell { column, value, rounded, paper, matches }
    }

    /// rounded − paper, when both exist.
    pub fn deviation(&self) -> Option<i64> {
        Some(self.rounded? - self.paper?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub x: f64,
    pub exponent: Option<u32>,
    pub exact: Option<u64>,
    pub cells: Vec<Cell>,
}

impl ComparisonRow {
    pub fn cell(&self, column: Column) -> Option<&Cell> {
        self.cells.iter().find(|c| c.column == column)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Erratum {
    pub table: TableId,
    pub x: f64,
    pub column: Column,
    pub paper_value: f64,
    pub computed_value: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub table: TableId,
    pub rows: Vec<ComparisonRow>,
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    /// Highest exponent n for which Table I computes π(10^n) exactly.
    pub max_exact_exponent: u32,
    /// Largest x for exact counting.
    pub max_x: u64,
    pub sieve: SieveConfig,
    pub params: FitParams,
    pub legendre_b: f64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            max_exact_exponent: 13,
            max_x: FAST_MAX,
            sieve: SieveConfig::from_env(),
            params: FitParams::PAPER,
            legendre_b: LEGENDRE_B,
        }
    }
}

impl TableOptions {
    fn exact(&self, x: u64) -> Result<Option<u64>> {
        if x > self.max_x {
            return Ok(None);
        }
        Ok(Some(prime_pi(x, &self.sieve)?.count))
    }
}

fn scale(v: i64, decimals: u32) -> f64 {
    v as f64 / 10f64.powi(decimals as i32)
}

/// Errata implied by the cells of `rows`.
pub fn detect_errata(table: TableId, rows: &[ComparisonRow]) -> Vec<Erratum> {
    let decimals = table.decimals();
    let mut out = Vec::new();
    for row in rows {
        for cell in &row.cells {
            let Some(dev) = cell.deviation() else { continue };
            let flagged = if cell.column == Column::Exact { dev != 0 } else { dev.abs() > 1 };
            if !flagged {
                continue;
            }
            let (paper, computed) = (cell.paper.unwrap(), cell.rounded.unwrap());
            let note = if cell.column == Column::Exact {
                "printed count differs from the exact prime count".to_string()
            } else if paper != 0 && computed == -paper {
                "sign differs from the defining formula".to_string()
            } else {
                format!("printed value differs by {dev} in the last digit")
            };
            out.push(Erratum {
                table,
                x: row.x,
                column: cell.column,
                paper_value: scale(paper, decimals),
                computed_value: scale(computed, decimals),
                note,
            });
        }
    }
    out
}

impl ComparisonReport {
    fn from_rows(table: TableId, rows: Vec<ComparisonRow>) -> Self {
        let errata = detect_errata(table, &rows);
        ComparisonReport { table, rows, errata }
    }

    pub fn build(table: TableId, opts: &TableOptions) -> Result<Self> {
        match table {
            TableId::I => table1(opts),
            TableId::II => table2(opts),
            TableId::III => table3(opts),
        }
    }

    pub fn row(&self, x: f64) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.x == x)
    }

    pub fn columns(&self) -> Vec<Column> {
        self.rows.first().map(|r| r.cells.iter().map(|c| c.column).collect()).unwrap_or_default()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One line per cell: table, x, exponent, exact, column, value, rounded,
    /// paper, match. Errata are implied by the cells and not written.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["table", "x", "exponent", "exact", "column", "value", "rounded", "paper", "match"])?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        for row in &self.rows {
            for c in &row.cells {
                w.write_record([
                    self.table.name().to_string(),
                    numfmt::real(row.x),
                    opt(row.exponent.map(|e| e.to_string())),
                    opt(row.exact.map(|e| e.to_string())),
                    c.column.key().to_string(),
                    opt(c.value.map(numfmt::real)),
                    opt(c.rounded.map(|v| v.to_string())),
                    opt(c.paper.map(|v| v.to_string())),
                    c.matches.to_string(),
                ])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut table = None;
        let mut rows: Vec<ComparisonRow> = Vec::new();
        fn opt<T: std::str::FromStr>(s: &str, what: &str) -> Result<Option<T>> {
            if s.is_empty() {
                return Ok(None);
            }
            s.parse().map(Some).map_err(|_| Error::Precondition(format!("bad {what} '{s}'")))
        }
        for rec in r.records() {
            let rec = rec?;
            if rec.len() != 9 {
                return Err(Error::Precondition(format!("expected 9 fields, got {}", rec.len())));
            }
            let t = TableId::parse(&rec[0])?;
            if *table.get_or_insert(t) != t {
                return Err(Error::Precondition("mixed tables in one CSV".into()));
            }
            let x: f64 = opt(&rec[1], "x")?.ok_or_else(|| Error::Precondition("missing x".into()))?;
            let cell = Cell {
                column: Column::parse(&rec[4])?,
                value: opt(&rec[5], "value")?,
                rounded: opt(&rec[6], "rounded")?,
                paper: opt(&rec[7], "paper")?,
                matches: opt(&rec[8], "match")?.unwrap_or(false),
            };
            match rows.last_mut() {
                Some(last) if last.x == x => last.cells.push(cell),
                _ => rows.push(ComparisonRow {
                    x,
                    exponent: opt(&rec[2], "exponent")?,
                    exact: opt(&rec[3], "exact")?,
                    cells: vec![cell],
                }),
            }
        }
        let table = table.ok_or_else(|| Error::Precondition("empty report CSV".into()))?;
        Ok(ComparisonReport::from_rows(table, rows))
    }

    pub fn to_markdown(&self) -> String {
        let decimals = self.table.decimals();
        let fmt_units = |v: i64| {
            if decimals == 0 {
                v.to_string()
            } else {
                let p = 10i64.pow(decimals);
                let sign = if v < 0 { "-" } else { "" };
                format!("{sign}{}.{:0width$}", v.abs() / p, v.abs() % p, width = decimals as usize)
            }
        };
        let mut s = String::new();
        let _ = writeln!(s, "### Table {}\n", self.table.name());
        let cols = self.columns();
        let _ = write!(s, "| x |");
        for c in &cols {
            let _ = write!(s, " {} |", c.label());
        }
        let _ = write!(s, "\n|---|");
        for _ in &cols {
            let _ = write!(s, "---|");
        }
        s.push('\n');
        for row in &self.rows {
            let x = match row.exponent {
                Some(e) => format!("10^{e}"),
                None => format!("{}", row.x as u64),
            };
            let _ = write!(s, "| {x} |");
            for c in &row.cells {
                let text = match (c.rounded, c.paper) {
                    (Some(r), Some(p)) if r == p => fmt_units(r),
                    (Some(r), Some(p)) => format!("{} (printed {})", fmt_units(r), fmt_units(p)),
                    (Some(r), None) => fmt_units(r),
                    (None, Some(p)) => format!("printed {}", fmt_units(p)),
                    (None, None) => "-".to_string(),
                };
                let _ = write!(s, " {text} |");
            }
            s.push('\n');
        }
        if self.errata.is_empty() {
            s.push_str("\nNo errata.\n");
        } else {
            s.push_str("\nErrata:\n\n");
            for e in &self.errata {
                let _ = writeln!(
                    s,
                    "- x = {}, {}: printed {}, computed {} ({})",
                    numfmt::real(e.x),
                    e.column.label(),
                    numfmt::real(e.paper_value),
                    numfmt::real(e.computed_value),
                    e.note
                );
            }
        }
        s
    }
}

fn table1(opts: &TableOptions) -> Result<ComparisonReport> {
    let decimals = TABLE1_DECIMALS;
    let mut rows = Vec::new();
    for &(n, printed) in &TABLE1 {
        let x = 10f64.powi(n as i32);
        let exact = if n <= opts.max_exact_exponent && n <= 19 { opts.exact(10u64.pow(n))? } else { None };
        let f = exact.map(|pi| f_exact(x, pi)).transpose()?;
        let paper = numfmt::round_half_away(printed * 10f64.powi(decimals as i32));
        rows.push(ComparisonRow {
            x,
            exponent: Some(n),
            exact,
            cells: vec![
                Cell::new(Column::F, f, Some(paper), decimals),
                Cell::new(Column::FHat, Some(opts.params.eval(n as f64)), None, decimals),
            ],
        });
    }
    Ok(ComparisonReport::from_rows(TableId::I, rows))
}

fn estimator_cells(x: f64, exact: Option<u64>, paper: &[i64], opts: &TableOptions, with_legendre: bool) -> Vec<Cell> {
    let mut cells = vec![
        Cell::new(Column::Exact, exact.map(|v| v as f64), Some(paper[0]), 0),
        Cell::new(Column::ThisWork, conjecture_pi(x, &opts.params).ok(), Some(paper[1]), 0),
        Cell::new(Column::RiemannR, riemann_r(x).ok(), Some(paper[2]), 0),
        Cell::new(Column::Li, li(x).ok(), Some(paper[3]), 0),
        Cell::new(Column::Gauss, gauss_ratio(x).ok(), Some(paper[4]), 0),
    ];
    if with_legendre {
        cells.push(Cell::new(Column::Legendre, legendre(x, opts.legendre_b).ok(), Some(paper[5]), 0));
    }
    cells
}

fn table2(opts: &TableOptions) -> Result<ComparisonReport> {
    let mut rows = Vec::new();
    for &(x, paper) in &TABLE2 {
        let exact = opts.exact(x)?;
        rows.push(ComparisonRow {
            x: x as f64,
            exponent: None,
            exact,
            cells: estimator_cells(x as f64, exact, &paper, opts, false),
        });
    }
    Ok(ComparisonReport::from_rows(TableId::II, rows))
}

fn table3(opts: &TableOptions) -> Result<ComparisonReport> {
    let mut rows = Vec::new();
    for &(n, paper) in &TABLE3 {
        let x = 10u64.pow(n);
        let exact = opts.exact(x)?;
        rows.push(ComparisonRow {
            x: x as f64,
            exponent: Some(n),
            exact,
            cells: estimator_cells(x as f64, exact, &paper, opts, true),
        });
    }
    Ok(ComparisonReport::from_rows(TableId::III, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> TableOptions {
        TableOptions { max_exact_exponent: 6, ..TableOptions::default() }
    }

    #[test]
    fn table1_flags_sign_at_ten() {
        let r = ComparisonReport::build(TableId::I, &quick()).unwrap();
        assert_eq!(r.rows.len(), 22);
        let e: Vec<_> = r.errata.iter().filter(|e| e.column == Column::F).collect();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].x, 10.0);
        assert_eq!(e[0].paper_value, 0.19741491);
        assert_eq!(e[0].computed_value, -0.19741491);
        assert!(e[0].note.contains("sign"));
        // rows beyond the exact range carry only printed values
        assert_eq!(r.rows[10].cell(Column::F).unwrap().value, None);
    }

    #[test]
    fn table2_errata() {
        let r = ComparisonReport::build(TableId::II, &quick()).unwrap();
        let has = |x: f64, c: Column, printed: f64, computed: f64| {
            r.errata
                .iter()
                .any(|e| e.x == x && e.column == c && e.paper_value == printed && e.computed_value == computed)
        };
        assert!(has(5.0, Column::Exact, 2.0, 3.0));
        assert!(has(500.0, Column::Exact, 101.0, 95.0));
        assert!(has(300.0, Column::Li, 59.0, 68.0));
        let exact: Vec<f64> = r.errata.iter().filter(|e| e.column == Column::Exact).map(|e| e.x).collect();
        assert_eq!(exact, vec![5.0, 500.0]);
    }

    #[test]
    fn csv_and_json() {
        let r = ComparisonReport::build(TableId::II, &quick()).unwrap();
        let csv = r.to_csv().unwrap();
        assert_eq!(ComparisonReport::from_csv(&csv).unwrap(), r);
        let json = r.to_json().unwrap();
        let back: ComparisonReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(r.to_markdown().contains("| 300 |"));
    }

    #[test]
    fn match_flag_invariant() {
        let r = ComparisonReport::build(TableId::III, &quick()).unwrap();
        for c in r.rows.iter().flat_map(|row| &row.cells) {
            assert_eq!(c.matches, c.rounded.is_some() && c.rounded == c.paper);
        }
    }

    #[test]
    fn unknown_table() {
        assert!(TableId::from_number(4).is_err());
    }
}
