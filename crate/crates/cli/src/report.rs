//! Row types and the three output formats.

use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

/// A record that can be laid out as an aligned text table.
pub trait Tabular: Serialize {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn render<R: Tabular>(rows: &[R], format: ReportFormat, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        ReportFormat::Table => render_table(rows, out)?,
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(R::headers())?;
            }
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn render_table<R: Tabular>(rows: &[R], out: &mut dyn Write) -> std::io::Result<()> {
    let headers = R::headers();
    let cells: Vec<Vec<String>> = rows.iter().map(Tabular::cells).collect();
    let widths: Vec<usize> = (0..headers.len())
        .map(|i| cells.iter().map(|r| r[i].len()).chain([headers[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |out: &mut dyn Write, items: &[&str]| -> std::io::Result<()> {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end())
    };
    line(out, headers)?;
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("  "))?;
    for row in &cells {
        line(out, &row.iter().map(String::as_str).collect::<Vec<_>>())?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub j: i64,
    pub mu: String,
    pub n: i64,
    pub m: i64,
    pub r: i64,
    pub c: i64,
    pub coefficient: String,
    pub variant: String,
    pub provenance: String,
}

impl Tabular for ClassRow {
    fn headers() -> &'static [&'static str] {
        &["j", "mu", "n", "m", "r", "c", "coefficient", "variant", "provenance"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.j.to_string(),
            self.mu.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.r.to_string(),
            self.c.to_string(),
            self.coefficient.clone(),
            self.variant.clone(),
            self.provenance.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOneRow {
    pub d: i64,
    pub mu: String,
    /// `j mod 2(d-1)`.
    pub j: i64,
    pub sigma: String,
    pub reference: String,
    pub status: String,
}

impl Tabular for TableOneRow {
    fn headers() -> &'static [&'static str] {
        &["d", "mu", "j", "sigma", "reference", "status"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.d.to_string(),
            self.mu.clone(),
            self.j.to_string(),
            self.sigma.clone(),
            self.reference.clone(),
            self.status.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableTwoRow {
    pub family: String,
    pub param: String,
    pub j: Option<i64>,
    pub mu: String,
    pub variant: String,
    pub difference: String,
    pub reference: String,
    pub status: String,
}

impl Tabular for TableTwoRow {
    fn headers() -> &'static [&'static str] {
        &["family", "param", "j", "mu", "variant", "difference", "reference", "status"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.param.clone(),
            self.j.map(|j| j.to_string()).unwrap_or_default(),
            self.mu.clone(),
            self.variant.clone(),
            self.difference.clone(),
            self.reference.clone(),
            self.status.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatelRow {
    pub divisor: String,
    pub mu: String,
    pub display: String,
    pub sigma_st: String,
    pub status: String,
}

impl Tabular for PatelRow {
    fn headers() -> &'static [&'static str] {
        &["divisor", "mu", "display", "sigma_st", "status"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.divisor.clone(),
            self.mu.clone(),
            self.display.clone(),
            self.sigma_st.clone(),
            self.status.clone(),
        ]
    }
}

pub fn status(pass: bool) -> String {
    if pass { "PASS" } else { "FAIL" }.to_string()
}
