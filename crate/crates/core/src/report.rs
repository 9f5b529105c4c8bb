//! Tabulation and comparison against published reference values.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fermi::fd_closed_form;
use crate::model::Order;
use crate::oracle::{fd_quadrature, QuadratureConfig};

/// Published `F_{1/2}(η)` values (McDougall & Stoner, as tabulated by
/// Clayton), taken as exact.
pub const REFERENCE_HALF: [(f64, f64); 12] = [
    (-4.0, 0.0161277),
    (-3.0, 0.0433664),
    (-2.0, 0.114588),
    (-1.0, 0.290501),
    (0.0, 0.678094),
    (0.1, 0.733403),
    (0.5, 0.990209),
    (1.0, 1.39638),
    (2.0, 2.50246),
    (3.0, 3.97699),
    (4.0, 5.77073),
    (5.0, 7.83798),
];

/// Previously published closed-form values and percentage errors for the
/// rows of [`REFERENCE_HALF`], as printed (6 significant digits).
pub const PUBLISHED_CLOSED_FORM: [(f64, f64); 12] = [
    (0.0161393, 0.0715548),
    (0.0434453, 0.181969),
    (0.11506, 0.411671),
    (0.292405, 0.655385),
    (0.678094, 6.95512e-11),
    (0.732034, 0.18664),
    (0.977945, 1.23858),
    (1.35129, 3.22903),
    (2.30003, 8.08906),
    (3.58315, 9.90297),
    (5.5495, 3.83358),
    (8.99919, 14.8152),
];

/// Allowed relative deviation from a published closed-form value.
pub const VALUE_REL_TOL: f64 = 1e-3;
/// Allowed deviation from a published error percentage, in percentage points.
pub const ERROR_PCT_ABS_TOL: f64 = 0.05;
/// Ceiling on the recomputed error at η = 0, in percent.
pub const ZERO_ROW_ERROR_PCT_MAX: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    rows: Vec<(f64, f64)>,
}

impl ReferenceTable {
    pub fn half_order() -> Self {
        Self {
            rows: REFERENCE_HALF.to_vec(),
        }
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    pub fn etas(&self) -> Vec<f64> {
        self.rows.iter().map(|&(eta, _)| eta).collect()
    }
}

/// Percentage deviation `100·|approx − reference| / reference`.
pub fn error_pct(approx: f64, reference: f64) -> f64 {
    100.0 * (approx - reference).abs() / reference.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub eta: f64,
    pub approx: f64,
    pub reference: f64,
    pub error_pct: f64,
}

impl ComparisonRow {
    pub fn new(eta: f64, approx: f64, reference: f64) -> Self {
        Self {
            eta,
            approx,
            reference,
            error_pct: error_pct(approx, reference),
        }
    }
}

/// One row of the published-table reproduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproducedRow {
    pub row: ComparisonRow,
    pub published_approx: f64,
    pub published_error_pct: f64,
    pub value_ok: bool,
    pub error_ok: bool,
}

impl ReproducedRow {
    pub fn passed(&self) -> bool {
        self.value_ok && self.error_ok
    }
}

/// Recomputes every closed-form `F_{1/2}` row and checks it against the
/// published value and error columns.
pub fn reproduce_half_order_table() -> Result<Vec<ReproducedRow>> {
    let k = Order::new(1)?;
    REFERENCE_HALF
        .iter()
        .zip(PUBLISHED_CLOSED_FORM.iter())
        .map(|(&(eta, reference), &(published_approx, published_error_pct))| {
            let approx = fd_closed_form(k, eta)?.value;
            let row = ComparisonRow::new(eta, approx, reference);
            let value_ok = (approx - published_approx).abs() <= VALUE_REL_TOL * published_approx.abs();
            let error_ok = if eta == 0.0 {
                row.error_pct <= ZERO_ROW_ERROR_PCT_MAX
            } else {
                (row.error_pct - published_error_pct).abs() <= ERROR_PCT_ABS_TOL
            };
            Ok(ReproducedRow {
                row,
                published_approx,
                published_error_pct,
                value_ok,
                error_ok,
            })
        })
        .collect()
}

/// Row of a closed form vs oracle table. Field names are the column names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub eta: f64,
    pub closed_form: f64,
    pub oracle: f64,
    /// `100·|closed_form − oracle| / oracle`.
    pub err_pct: f64,
    pub warning: bool,
}

pub fn table_rows(k: Order, etas: &[f64], config: &QuadratureConfig<f64>) -> Result<Vec<TableRow>> {
    etas.iter()
        .map(|&eta| {
            let closed = fd_closed_form(k, eta)?;
            let oracle = fd_quadrature(k, eta, config)?.value;
            Ok(TableRow {
                eta,
                closed_form: closed.value,
                oracle,
                err_pct: error_pct(closed.value, oracle),
                warning: closed.validity_warning,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Writes rows as CSV (header, LF endings) or as a JSON array. Floats are
/// written in shortest round-trip form.
pub fn write_table<W: Write>(rows: &[TableRow], format: TableFormat, out: W) -> std::io::Result<()> {
    match format {
        TableFormat::Csv => {
            let mut writer = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            for row in rows {
                writer.serialize(row)?;
            }
            writer.flush()
        }
        TableFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")
        }
    }
}

/// Renders `x` with `digits` significant digits; scientific notation is used
/// below 1e-4 and for magnitudes that would need more integer digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let scientific = format!("{:.*e}", digits - 1, x);
    let (_, exp) = scientific.split_once('e').expect("exponent marker");
    let exponent: i32 = exp.parse().expect("integer exponent");
    if x.abs() < 1e-4 || exponent >= digits as i32 {
        return scientific.replacen('e', "E", 1);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}
