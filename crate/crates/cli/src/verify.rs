//! Verification suites behind `maroni verify`.

use std::fmt;

use clap::ValueEnum;
use maroni_core::classes::{dp_trigonal_check, sigma_corr1, sigma_corr2, sigma_min, sigma_st};
use maroni_core::combinatorics::{enumerate_boundary_types, enumerate_partitions, make_boundary_type};
use maroni_core::lattice::{correction_ln_with, correction_n_with, verify_integer_max, verify_joint_max};
use maroni_core::rational::{int, rat};
use maroni_core::reference::{table_one_sigma, TABLE_ONE};
use maroni_core::{BoundaryType, HurwitzParams};
use rayon::prelude::*;

use crate::{patel_rows, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lattice,
    Identities,
    Tables,
    All,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub max_d: i64,
    pub max_g: i64,
    pub radius: i64,
    pub max_m: i64,
    pub tie_exhaustive: bool,
}

/// Result of one named check over `count` cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub count: usize,
    pub unit: &'static str,
    pub failures: Vec<String>,
}

impl CheckLine {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} {}", self.name, self.count, self.unit)?;
        for failure in self.failures.iter().take(10) {
            write!(f, "\n    {failure}")?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n    ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Result<Vec<CheckLine>, CliError> {
    Ok(match suite {
        Suite::Lattice => lattice(cfg)?,
        Suite::Identities => identities(cfg)?,
        Suite::Tables => tables(cfg)?,
        Suite::All => {
            let mut lines = lattice(cfg)?;
            lines.extend(identities(cfg)?);
            lines.extend(tables(cfg)?);
            lines
        }
    })
}

/// Every admissible type with `d <= max_d` and `g = (d-1)k <= max_g`.
fn types_in_range(cfg: &Config) -> Result<Vec<BoundaryType>, CliError> {
    let mut out = Vec::new();
    for d in 3..=cfg.max_d {
        for k in 1..=cfg.max_g / (d - 1) {
            out.extend(enumerate_boundary_types(HurwitzParams::from_k(d, k)?));
        }
    }
    Ok(out)
}

fn label(bt: &BoundaryType) -> String {
    format!("d={} g={} j={} mu={}", bt.d(), bt.params().g(), bt.j(), bt.mu())
}

/// Runs `check` on every type in parallel and keeps failures in input order.
fn per_type<F>(name: String, unit: &'static str, types: &[BoundaryType], check: F) -> CheckLine
where
    F: Fn(&BoundaryType) -> Vec<String> + Sync,
{
    let failures = types.par_iter().map(&check).collect::<Vec<_>>().concat();
    CheckLine { name, count: types.len(), unit, failures }
}

fn lattice(cfg: &Config) -> Result<Vec<CheckLine>, CliError> {
    let types: Vec<BoundaryType> = types_in_range(cfg)?.into_iter().filter(|t| t.m() <= cfg.max_m).collect();
    let joint: Vec<BoundaryType> = types.iter().filter(|t| t.mu().has_unit_part()).cloned().collect();
    let radius = cfg.radius;
    let mut lines = vec![
        per_type(format!("lattice/integer-max (radius {radius}, m<={})", cfg.max_m), "types", &types, |bt| {
            match verify_integer_max(bt, radius) {
                Ok(true) => vec![],
                other => vec![format!("{}: {other:?}", label(bt))],
            }
        }),
        per_type(format!("lattice/joint-max (radius {radius}, m<={})", cfg.max_m), "types", &joint, |bt| {
            match verify_joint_max(bt, radius) {
                Ok(true) => vec![],
                other => vec![format!("{}: {other:?}", label(bt))],
            }
        }),
    ];
    if cfg.tie_exhaustive {
        let all = types_in_range(cfg)?;
        lines.push(per_type("lattice/rounding-ties".into(), "types", &all, |bt| {
            let mut fails = Vec::new();
            match (correction_n_with(bt, false), correction_n_with(bt, true)) {
                (Ok(plain), Ok(full)) => {
                    if plain.delta != full.delta || !full.point.ties_agree {
                        fails.push(format!("{}: corr1 tie branches disagree", label(bt)));
                    }
                }
                (a, b) => fails.push(format!("{}: {:?} {:?}", label(bt), a.err(), b.err())),
            }
            if bt.mu().has_unit_part() {
                match (correction_ln_with(bt, false), correction_ln_with(bt, true)) {
                    (Ok(plain), Ok(full)) => {
                        if plain.delta != full.delta || !full.point.ties_agree {
                            fails.push(format!("{}: corr2 tie branches disagree", label(bt)));
                        }
                    }
                    (a, b) => fails.push(format!("{}: {:?} {:?}", label(bt), a.err(), b.err())),
                }
            }
            fails
        }));
    }
    Ok(lines)
}

fn identities(cfg: &Config) -> Result<Vec<CheckLine>, CliError> {
    let types = types_in_range(cfg)?;
    let joint: Vec<BoundaryType> = types.iter().filter(|t| t.mu().has_unit_part()).cloned().collect();
    let tie = cfg.tie_exhaustive;
    Ok(vec![
        per_type("identities/corr1 (sigma_st - sigma_corr1 = delta >= 0, m/4 >= sum_sq)".into(), "types", &types, |bt| {
            let mut fails = Vec::new();
            match (correction_n_with(bt, tie), sigma_corr1(bt)) {
                (Ok(c), Ok(s)) => {
                    if sigma_st(bt) - s != c.delta {
                        fails.push(format!("{}: identity", label(bt)));
                    }
                    if c.delta < int(0) || c.sum_sq > rat(bt.m(), 4) {
                        fails.push(format!("{}: delta {} sum_sq {}", label(bt), c.delta, c.sum_sq));
                    }
                }
                (a, b) => fails.push(format!("{}: {:?} {:?}", label(bt), a.err(), b.err())),
            }
            fails
        }),
        per_type("identities/corr2 (sigma_st - sigma_corr2 = delta >= 0, m/4 >= sum_sq)".into(), "types", &joint, |bt| {
            let mut fails = Vec::new();
            match (correction_ln_with(bt, tie), sigma_corr2(bt)) {
                (Ok(c), Ok(s)) => {
                    if sigma_st(bt) - s != c.delta {
                        fails.push(format!("{}: identity", label(bt)));
                    }
                    if c.delta < int(0) || c.sum_sq > rat(bt.m(), 4) {
                        fails.push(format!("{}: delta {} sum_sq {}", label(bt), c.delta, c.sum_sq));
                    }
                }
                (a, b) => fails.push(format!("{}: {:?} {:?}", label(bt), a.err(), b.err())),
            }
            fails
        }),
        per_type("identities/min <= st, st and corr1 symmetric under j -> b-j".into(), "types", &types, |bt| {
            let mirror = bt.mirrored();
            match (sigma_min(bt), sigma_corr1(bt), sigma_corr1(&mirror)) {
                (Ok((v, _)), Ok(c), Ok(c_mirror)) => {
                    let mut fails = Vec::new();
                    if v > sigma_st(bt) {
                        fails.push(format!("{}: min {v} above st", label(bt)));
                    }
                    if c != c_mirror || sigma_st(bt) != sigma_st(&mirror) {
                        fails.push(format!("{}: not symmetric under j -> b-j", label(bt)));
                    }
                    fails
                }
                (a, b, c) => vec![format!("{}: {:?} {:?} {:?}", label(bt), a.err(), b.err(), c.err())],
            }
        }),
    ])
}

fn tables(cfg: &Config) -> Result<Vec<CheckLine>, CliError> {
    let mut lines = Vec::new();

    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut positive = 0;
    for d in 3..=5 {
        let period = 2 * (d - 1);
        let params = HurwitzParams::from_k(d, 3)?;
        for mu in enumerate_partitions(d)? {
            for residue in 0..period {
                let Ok(bt) = make_boundary_type(params, residue + period, mu.clone()) else { continue };
                pairs += 1;
                let delta = correction_n_with(&bt, cfg.tie_exhaustive)?.delta;
                let reference = int(table_one_sigma(mu.parts(), residue));
                if delta > int(0) {
                    positive += 1;
                }
                if delta != reference {
                    failures.push(format!("d={d} mu={mu} j={residue}: computed {delta}, reference {reference}"));
                }
            }
        }
    }
    if positive != TABLE_ONE.len() {
        failures.push(format!("{positive} positive pairs, table lists {}", TABLE_ONE.len()));
    }
    lines.push(CheckLine { name: "tables/table1 (d=3..5)".into(), count: pairs, unit: "pairs", failures });

    let mut failures = Vec::new();
    let mut rows = 0;
    for g in (4..=cfg.max_g.max(4)).step_by(2) {
        let report = dp_trigonal_check(g)?;
        for row in &report.rows {
            rows += 1;
            if !row.pass() {
                let name = row.family.name();
                failures.push(format!("g={g} {name} {}: {} vs {}", row.param, row.computed, row.expected));
            }
        }
        for row in &report.hodge_rows {
            rows += 1;
            if !row.pass() {
                failures.push(format!("g={g} Delta_1 g1={}: {} vs {}", row.g1, row.sigma_st, row.expected));
            }
        }
    }
    let name = format!("tables/table2 (even 4<=g<={})", cfg.max_g.max(4));
    lines.push(CheckLine { name, count: rows, unit: "rows", failures });

    let mut failures = Vec::new();
    let mut count = 0;
    for d in 3..=cfg.max_d {
        for k in 1..=cfg.max_g / (d - 1) {
            for row in patel_rows(HurwitzParams::from_k(d, k)?)? {
                count += 1;
                if row.status != "PASS" {
                    failures.push(format!("d={d} k={k} {}: {} vs {}", row.divisor, row.sigma_st, row.display));
                }
            }
        }
    }
    lines.push(CheckLine { name: "tables/patel".into(), count, unit: "equalities", failures });
    Ok(lines)
}
