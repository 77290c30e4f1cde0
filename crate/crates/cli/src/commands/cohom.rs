use super::{dims_display, qrows, qstrs, required_path};
use crate::input::{integer_rows, load_json, load_text};
use crate::model::TepModelFile;
use crate::report::RunReport;
use crate::CohomArgs;
use anyhow::{Context, Result};
use num_traits::Zero;
use serde::Deserialize;
use toric_gkz::cohomology::{
    bundle_cohomology, chern_classes, cohomology_ring, flatness_check, graded_structure, qdm_connection, table_summary,
    BundleCohomology, QuantumTable,
};
use toric_gkz::fan::Fan;
use toric_gkz::linalg::vec_is_zero;
use toric_gkz::tep::{LMatrix, NilpotentPairedSpace, PairingModel};

/// Truncation order used when `--truncation` is absent.
const DEFAULT_TRUNCATION: u32 = 2;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    #[serde(default)]
    beta: Vec<Vec<i64>>,
}

/// Weight `-(n + r)` with the Poincaré form of `Y` as its `λ^{n+r}` coefficient.
pub fn poincare_model(bc: &BundleCohomology) -> NilpotentPairedSpace {
    let w = -(bc.dim_y() as i64);
    NilpotentPairedSpace {
        pairing: PairingModel { weight: w, matrix: LMatrix::from_q(&bc.pairing_matrix(), -w) },
        n0: bc.n.clone(),
    }
}

fn check_table(report: &mut RunReport, label: &str, table: &QuantumTable, truncation: u32) {
    let axioms = report.time(&format!("{label} axioms"), || table.check_axioms());
    for item in &axioms.items {
        report.check(format!("{label} axiom: {}", item.axiom), item.passed, item.detail.clone());
    }
    if !axioms.passed() {
        return;
    }
    match report.time(&format!("{label} connection"), || qdm_connection(table, truncation)) {
        Ok(conn) => {
            let flat = report.time(&format!("{label} flatness"), || flatness_check(&conn));
            let bad: Vec<&str> = flat.components.iter().filter(|c| !c.vanishes).map(|c| c.component.as_str()).collect();
            let detail = if bad.is_empty() {
                format!("{} curvature components vanish to order {}", flat.components.len(), flat.truncation)
            } else {
                format!("nonzero: {}", bad.join("; "))
            };
            report.check(format!("{label} connection flat"), flat.flat(), Some(detail));
        }
        Err(e) => report.check(format!("{label} connection built"), false, Some(e.to_string())),
    }
}

pub fn run(args: &CohomArgs, report: &mut RunReport) -> Result<()> {
    let path = required_path(&args.input)?;
    let file: FanFile = load_json(report, path)?;
    let beta = match &args.beta {
        Some(s) => integer_rows(s)?,
        None => file.beta.clone(),
    };
    let fan = Fan::new(file.rays, file.cones)?;
    let ring = report.time("ring", || cohomology_ring(&fan))?;
    let chern = chern_classes(&ring, &beta)?;
    let bc = report.time("bundle", || bundle_cohomology(&ring, &chern))?;
    report.fact("base dimension", fan.dim());
    report.fact("bundle rank", bc.r);
    report.fact("base betti numbers", ring.betti());
    report.fact("base basis", ring.basis_names());
    report.fact(
        "chern classes",
        chern.iter().enumerate().map(|(k, c)| format!("c{k} = {}", ring.element_display(c))).collect::<Vec<_>>(),
    );
    report.fact("cohomology rank", bc.rank());
    report.fact("cohomology basis", bc.basis_names());
    report.fact("poincare pairing", qrows(&bc.pairing_matrix()));

    let det = bc.pairing_matrix().det();
    report.check("Poincare pairing nondegenerate", !det.is_zero(), Some(format!("det {det}")));
    let residual = bc.relation_residual();
    report.check("bundle relation holds", vec_is_zero(&residual), None);
    report.check("Ker N = Im i0*", bc.kernel_matches_i0_image(), None);

    let gs = report.time("graded structure", || graded_structure(&bc))?;
    report.fact("jordan type", gs.weight.jordan_type());
    report.fact("weight graded dims", dims_display(&gs.weight.graded_dims()));
    report.fact("cokernel graded dims", dims_display(&gs.cok_graded_dims));
    report.fact("kernel graded dims", dims_display(&gs.ker_graded_dims));
    let cok_total: usize = gs.cok_graded_dims.values().sum();
    report.check(
        "dim Cok N = dim H*(X)",
        cok_total == ring.rank(),
        Some(format!("{cok_total} against {}", ring.rank())),
    );
    report.check("weight filtration characterization", gs.weight.satisfies_characterization(), None);
    let mut dets = Vec::new();
    for (side, list) in [("Cok", &gs.cok_pairings), ("Ker", &gs.ker_pairings)] {
        for p in list {
            dets.push(format!("{side} degree {}: det {} ({:?})", p.degree, p.det, p.symmetry).to_lowercase());
        }
    }
    report.fact("graded pairings", dets);
    report.check("graded pairings nondegenerate", gs.all_nondegenerate(), None);

    let truncation = args.truncation.unwrap_or(DEFAULT_TRUNCATION);
    let classical = QuantumTable::classical(&bc, truncation);
    check_table(report, "classical", &classical, truncation);

    if let Some(tpath) = &args.quantum {
        let text = load_text(report, tpath)?;
        let mut table = QuantumTable::from_json(&text).with_context(|| format!("{}", tpath.display()))?;
        let t = args.truncation.map_or(table.truncation, |t| t.min(table.truncation));
        if t < table.truncation {
            table = table.with_truncation(t);
        }
        report.fact("quantum products", table_summary(&table));
        check_table(report, "quantum", &table, t);
        if table.dim == bc.rank() {
            report.fact("quantum table reduces to H*(Y)", table.classical_limit_matches(&bc));
        }
    }

    if let Some(out) = &args.write_table {
        std::fs::write(out, classical.to_json() + "\n").with_context(|| format!("cannot write {}", out.display()))?;
        report.fact("table written to", out.display().to_string());
    }
    if let Some(out) = &args.write_tep {
        let model = TepModelFile::from_space(&poincare_model(&bc));
        let text = serde_json::to_string_pretty(&model)?;
        std::fs::write(out, text + "\n").with_context(|| format!("cannot write {}", out.display()))?;
        report.fact("model written to", out.display().to_string());
    }
    report.fact("gamma", qstrs(&bc.gamma()));
    Ok(())
}
