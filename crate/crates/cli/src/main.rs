use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fdzeta::report::{self, format_significant, TableFormat};
use fdzeta::{fd_closed_form, fd_quadrature, fd_series_nondegenerate, Error, Order, QuadratureConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Fermi-Dirac integrals F_{k/2}(eta) from Riemann and Hurwitz zeta functions.
#[derive(Debug, Parser)]
#[command(name = "fdzeta", version)]
struct Cli {
    /// Relative tolerance of the quadrature oracle.
    #[arg(long, global = true, default_value_t = 1e-12)]
    rel_tol: f64,

    /// Significant digits used for display.
    #[arg(long, global = true, default_value_t = 6)]
    digits: usize,

    /// Suppress validity warnings.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F_{k/2}(eta) once.
    Eval {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Tabulate the closed form against the quadrature oracle.
    Table {
        #[arg(long)]
        k: i64,
        /// Comma-separated eta values, e.g. -4,-2,0,1.5
        #[arg(long, allow_hyphen_values = true)]
        etas: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the published F_{1/2} comparison table and check it.
    #[command(name = "reproduce-table1")]
    ReproduceTable1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Quadrature,
    Series,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    Mismatch(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn parse_etas(list: &str) -> Result<Vec<f64>, Failure> {
    let etas = list
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Usage(format!("malformed eta value '{item}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if etas.is_empty() {
        return Err(Failure::Usage("empty eta list".into()));
    }
    Ok(etas)
}

fn oracle_config(cli: &Cli) -> Result<QuadratureConfig, Failure> {
    let config = QuadratureConfig::default().with_rel_tol(cli.rel_tol);
    config.validate()?;
    Ok(config)
}

fn warn(cli: &Cli, eta: f64) {
    if !cli.quiet {
        eprintln!("warning: eta = {eta} exceeds 5; the closed form is not reliable in this range");
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval { k, eta, method } => {
            let k = Order::new(*k)?;
            if !eta.is_finite() {
                return Err(Failure::Usage(format!("eta must be finite, got {eta}")));
            }
            let result = match method {
                MethodArg::Closed => fd_closed_form(k, *eta)?,
                MethodArg::Quadrature => fd_quadrature(k, *eta, &oracle_config(cli)?)?,
                MethodArg::Series => fd_series_nondegenerate(k, *eta)?,
            };
            println!("{}", format_significant(result.value, cli.digits));
            if result.validity_warning {
                warn(cli, *eta);
            }
        }
        Command::Table { k, etas, format, out } => {
            let k = Order::new(*k)?;
            let etas = parse_etas(etas)?;
            let rows = report::table_rows(k, &etas, &oracle_config(cli)?)?;
            let format = match format {
                FormatArg::Csv => TableFormat::Csv,
                FormatArg::Json => TableFormat::Json,
            };
            match out {
                Some(path) => report::write_table(&rows, format, BufWriter::new(File::create(path)?))?,
                None => report::write_table(&rows, format, io::stdout().lock())?,
            }
            for row in rows.iter().filter(|r| r.warning) {
                warn(cli, row.eta);
            }
        }
        Command::ReproduceTable1 => reproduce(cli)?,
    }
    Ok(())
}

fn reproduce(cli: &Cli) -> Result<(), Failure> {
    let rows = report::reproduce_half_order_table()?;
    let d = cli.digits;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:>5}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}  status",
        "eta", "approx", "reference", "error_pct", "printed", "printed_err"
    )?;
    let mut failed = 0;
    for r in &rows {
        let status = match (r.value_ok, r.error_ok) {
            (true, true) => "pass",
            (false, true) => "FAIL value",
            (true, false) => "FAIL error",
            (false, false) => "FAIL value+error",
        };
        if !r.passed() {
            failed += 1;
        }
        writeln!(
            out,
            "{:>5}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}  {status}",
            r.row.eta,
            format_significant(r.row.approx, d),
            format_significant(r.row.reference, d),
            format_significant(r.row.error_pct, d),
            format_significant(r.published_approx, d),
            format_significant(r.published_error_pct, d),
        )?;
    }
    writeln!(out, "{} of {} rows pass", rows.len() - failed, rows.len())?;
    if failed > 0 {
        return Err(Failure::Mismatch(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
        Err(Failure::Mismatch(n)) => {
            eprintln!("{n} row(s) do not reproduce the published table");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
