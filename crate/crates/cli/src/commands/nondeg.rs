use super::required_path;
use crate::input::{load_json, rationals};
use crate::report::RunReport;
use crate::NondegArgs;
use anyhow::Result;
use toric_gkz::lattice::PointConfiguration;
use toric_gkz::poly::nondegeneracy_check;

/// Reports verdicts as facts: a degenerate polynomial is an answer, not a failure.
pub fn run(args: &NondegArgs, report: &mut RunReport) -> Result<()> {
    let path = required_path(&args.input)?;
    let config: PointConfiguration = load_json(report, path)?;
    let gamma = rationals(&args.gamma)?;
    let verdict = report.time("nondegeneracy", || nondegeneracy_check(&config, &gamma))?;
    report.fact("nondegenerate", verdict.nondegenerate);
    let lines: Vec<String> = verdict
        .faces
        .iter()
        .map(|f| {
            let idx: Vec<String> = f.index_set.iter().filter(|&&i| i != 0).map(|i| i.to_string()).collect();
            let state = if f.nondegenerate { "nondegenerate" } else { "degenerate" };
            match &f.reason {
                Some(r) => format!("face {{{}}} dim {}: {state} ({r})", idx.join(","), f.dimension),
                None => format!("face {{{}}} dim {}: {state}", idx.join(","), f.dimension),
            }
        })
        .collect();
    report.fact("faces", lines);
    Ok(())
}
