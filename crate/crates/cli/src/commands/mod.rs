mod cohom;
mod demo;
mod gkz;
mod lattice;
mod nondeg;
mod tep;

use crate::report::RunReport;
use crate::{Cli, Command, InputArg};
use anyhow::{anyhow, Result};
use std::path::Path;
use toric_gkz::linalg::QMatrix;
use toric_gkz::rational::{fmt_q, Q};

/// Box bound used when `--bound` is absent.
pub const DEFAULT_BOUND: u64 = 5;

pub fn run(cli: &Cli, report: &mut RunReport) -> Result<()> {
    let bound = cli.bound.unwrap_or(DEFAULT_BOUND);
    match &cli.command {
        Command::Lattice(a) => lattice::run(a, bound, report),
        Command::Gkz(a) => gkz::run(a, bound, report),
        Command::Nondeg(a) => nondeg::run(a, report),
        Command::Cohom(a) => cohom::run(a, report),
        Command::Tep(a) => tep::run(a, cli.seed, report),
        Command::Demo(a) => demo::run(a, bound, report),
    }
}

fn required_path(input: &InputArg) -> Result<&Path> {
    input.path().ok_or_else(|| anyhow!("an input file is required (positional or --config)"))
}

fn qstrs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn qrows(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| qstrs(r)).collect()
}

fn dims_display(d: &std::collections::BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = d.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}
