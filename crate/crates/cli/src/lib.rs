//! Command-line reports for the extended Maroni classes.
//!
//! Every command writes to a caller-supplied sink so that tests can run it
//! in-process. Exit codes: 0 success, 1 verification failure, 2 usage error.

pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maroni_core::classes::{build_table, dp_trigonal_check, patel_partial, sigma_st};
use maroni_core::combinatorics::{make_boundary_type, Partition};
use maroni_core::lattice::correction_n_with;
use maroni_core::reference::{table_two_difference, TABLE_ONE};
use maroni_core::{ClassVariant, HurwitzParams};
use thiserror::Error;

pub use report::{ClassRow, PatelRow, ReportFormat, TableOneRow, TableTwoRow};
use report::{render, status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] maroni_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "maroni", version, about = "Boundary coefficients of extended Maroni divisor classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient of every boundary divisor S_{j,mu} for one (d, g).
    Classes {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
        #[arg(long, value_enum, default_value = "st")]
        variant: VariantArg,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute the listed positive corrections for 3 <= d <= 5.
    Table1 {
        #[arg(long)]
        tie_exhaustive: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare trigonal boundary corrections with the reference differences.
    Table2 {
        #[arg(long)]
        g: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Check the Delta, E2, E3 coefficients at j = 2.
    Patel {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Run a verification suite over a range of (d, g).
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        #[arg(long, default_value_t = 5)]
        max_d: i64,
        #[arg(long, default_value_t = 16)]
        max_g: i64,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        /// Largest chain length m sent to the lattice scans.
        #[arg(long, default_value_t = 6)]
        max_m: i64,
        #[arg(long)]
        tie_exhaustive: bool,
    },
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    St,
    Corr1,
    Corr2,
    Min,
}

impl From<VariantArg> for ClassVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::St => ClassVariant::St,
            VariantArg::Corr1 => ClassVariant::Corr1,
            VariantArg::Corr2 => ClassVariant::Corr2,
            VariantArg::Min => ClassVariant::Min,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the process exit code; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a check reported FAIL.
pub fn execute(command: Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match command {
        Command::Classes { d, g, variant, output } => {
            let rows = class_rows(params(d, g)?, variant.into())?;
            render(&rows, output.format, out)?;
            Ok(true)
        }
        Command::Table1 { tie_exhaustive, output } => {
            let rows = table_one_rows(tie_exhaustive)?;
            render(&rows, output.format, out)?;
            Ok(rows.iter().all(|r| r.status == "PASS"))
        }
        Command::Table2 { g, output } => {
            let rows = table_two_rows(g)?;
            render(&rows, output.format, out)?;
            Ok(rows.iter().all(|r| r.status != "FAIL"))
        }
        Command::Patel { d, g, output } => {
            let rows = patel_rows(params(d, g)?)?;
            render(&rows, output.format, out)?;
            Ok(rows.iter().all(|r| r.status == "PASS"))
        }
        Command::Verify { suite, max_d, max_g, radius, max_m, tie_exhaustive } => {
            if max_d < 3 || max_g < 1 || radius < 0 || max_m < 1 {
                return Err(CliError::Usage(
                    "need --max-d >= 3, --max-g >= 1, --radius >= 0 and --max-m >= 1".into(),
                ));
            }
            let cfg = verify::Config { max_d, max_g, radius, max_m, tie_exhaustive };
            let lines = verify::run_suite(suite, &cfg)?;
            for line in &lines {
                writeln!(out, "{line}")?;
            }
            let failed = lines.iter().filter(|l| !l.pass()).count();
            writeln!(out, "{} checks, {failed} failed", lines.len())?;
            Ok(failed == 0)
        }
    }
}

fn params(d: i64, g: i64) -> Result<HurwitzParams, CliError> {
    HurwitzParams::new(d, g).map_err(|e| match e {
        maroni_core::Error::Domain(msg) => CliError::Usage(msg),
        other => CliError::Core(other),
    })
}

pub fn class_rows(params: HurwitzParams, variant: ClassVariant) -> Result<Vec<ClassRow>, CliError> {
    let table = build_table(params, variant)?;
    Ok(table
        .rows
        .iter()
        .map(|row| ClassRow {
            j: row.bt.j(),
            mu: row.bt.mu().to_string(),
            n: row.bt.n(),
            m: row.bt.m(),
            r: row.bt.r(),
            c: row.bt.c(),
            coefficient: row.coefficient.to_string(),
            variant: row.variant.to_string(),
            provenance: row.provenance.to_string(),
        })
        .collect())
}

/// One row per reference entry, recomputed at `k = 3` where two residue periods fit.
pub fn table_one_rows(tie_exhaustive: bool) -> Result<Vec<TableOneRow>, CliError> {
    TABLE_ONE
        .iter()
        .map(|entry| {
            let d = entry.d();
            let params = HurwitzParams::from_k(d, 3)?;
            let j = entry.j_residue + 2 * (d - 1);
            let bt = make_boundary_type(params, j, Partition::new(entry.mu.to_vec())?)?;
            let sigma = correction_n_with(&bt, tie_exhaustive)?.delta;
            let reference = maroni_core::rational::int(entry.sigma);
            Ok(TableOneRow {
                d,
                mu: bt.mu().to_string(),
                j: entry.j_residue,
                sigma: sigma.to_string(),
                reference: reference.to_string(),
                status: status(sigma == reference),
            })
        })
        .collect()
}

pub fn table_two_rows(g: i64) -> Result<Vec<TableTwoRow>, CliError> {
    if g < 4 || g % 2 != 0 {
        return Err(CliError::Usage(format!("table2 needs an even genus g >= 4, got g={g}")));
    }
    let report = dp_trigonal_check(g)?;
    let mut rows: Vec<TableTwoRow> = report
        .rows
        .iter()
        .map(|r| TableTwoRow {
            family: r.family.name().to_string(),
            param: r.param.clone(),
            j: Some(r.j),
            mu: r.mu.to_string(),
            variant: r.variant.to_string(),
            difference: r.computed.to_string(),
            reference: r.expected.to_string(),
            status: status(r.pass()),
        })
        .collect();
    let ones = Partition::ones(3)?.to_string();
    rows.extend(report.hodge_rows.iter().map(|h| TableTwoRow {
        family: "Delta_1 sigma_st".to_string(),
        param: format!("g1={}", h.g1),
        j: Some(h.j),
        mu: ones.clone(),
        variant: ClassVariant::St.to_string(),
        difference: h.sigma_st.to_string(),
        reference: h.expected.to_string(),
        status: status(h.pass()),
    }));
    rows.extend(report.unchecked.iter().map(|f| TableTwoRow {
        family: f.name().to_string(),
        param: String::new(),
        j: None,
        mu: String::new(),
        variant: String::new(),
        difference: String::new(),
        reference: table_two_reference(*f),
        status: "SKIP".to_string(),
    }));
    Ok(rows)
}

fn table_two_reference(family: maroni_core::reference::TrigonalFamily) -> String {
    use maroni_core::reference::TrigonalFamily as F;
    match family {
        F::Delta2 => table_two_difference(family, 0).to_string(),
        F::Delta5 => "g2(g2+1)/2".to_string(),
        F::Delta6 => "(g2+1)^2/4 (-1/4 if g2 even)".to_string(),
        _ => String::new(),
    }
}

pub fn patel_rows(params: HurwitzParams) -> Result<Vec<PatelRow>, CliError> {
    let d = params.d();
    let (delta, e2, e3) = patel_partial(params);
    let padded = |mut parts: Vec<i64>| {
        let fill = (d - parts.iter().sum::<i64>()) as usize;
        parts.resize(parts.len() + fill, 1);
        Partition::new(parts)
    };
    let mut targets = vec![("Delta", padded(vec![])?, delta)];
    if d >= 4 {
        targets.push(("E2", padded(vec![2, 2])?, e2));
    }
    targets.push(("E3", padded(vec![3])?, e3));
    targets
        .into_iter()
        .map(|(name, mu, display)| {
            let sigma = sigma_st(&make_boundary_type(params, 2, mu.clone())?);
            Ok(PatelRow {
                divisor: name.to_string(),
                mu: mu.to_string(),
                display: display.to_string(),
                sigma_st: sigma.to_string(),
                status: status(sigma == display),
            })
        })
        .collect()
}
