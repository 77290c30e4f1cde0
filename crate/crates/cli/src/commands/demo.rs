use super::cohom::poincare_model;
use super::{dims_display, qstrs};
use crate::input::integers;
use crate::report::RunReport;
use crate::DemoArgs;
use anyhow::{bail, Result};
use std::collections::BTreeMap;
use toric_gkz::cohomology::{bundle_cohomology, chern_classes, cohomology_ring, graded_structure};
use toric_gkz::fan::Fan;
use toric_gkz::gkz::{build_bb_presentation, build_lambda_ideal, build_ordinary_ideal, GammaSet};
use toric_gkz::lattice::{
    build_local_data, cone_facets, interior_test, saturation_check, semigroup_module_generators, SemigroupSpec,
};
use toric_gkz::rational::{q, Q};
use toric_gkz::tep::{mixed_tep_assemble, mixed_tep_validate};

/// Box radius for the interior comparison.
const INTERIOR_BOX: i64 = 3;

fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Local P^2 end to end, checked against its known values.
pub fn run(args: &DemoArgs, bound: u64, report: &mut RunReport) -> Result<()> {
    let row = integers(&args.beta)?;
    if row.len() != 3 {
        bail!("--beta needs 3 entries, got {}", row.len());
    }
    let fan = Fan::projective(2);
    let beta = vec![row];

    let local = report.time("local data", || build_local_data(&fan, &beta))?;
    let config = &local.config;
    report.fact("configuration", config.points());
    report.fact("bundle assumed nef", local.nef_assumed);

    let sat = report.time("saturation", || saturation_check(config, bound))?;
    report.check("K(A) saturated", sat.saturated, sat.witness.as_ref().map(|w| format!("witness {w:?}")));

    // K(A)° = e_{n+1} + K(A) for a single bundle.
    let shift = local.extra_vector.clone().unwrap_or_default();
    let cone = cone_facets(config);
    let mut mismatches = Vec::new();
    for c in box_points(config.rank(), INTERIOR_BOX) {
        let shifted: Vec<i64> = c.iter().zip(&shift).map(|(x, s)| x + s).collect();
        if interior_test(config, &c)? != cone.contains(&shifted) {
            mismatches.push(c);
        }
    }
    report.check(
        "interior semigroup is the shifted semigroup",
        mismatches.is_empty(),
        mismatches.first().map(|c| format!("first mismatch {c:?}")),
    );
    let interior_gens = semigroup_module_generators(config, SemigroupSpec::Interior, bound)?;
    report.fact("interior module generators", &interior_gens);
    report.check("interior module generated by e3", interior_gens == vec![vec![0, 0, 1]], None);

    let zero = vec![q(0); config.rank()];
    let ordinary = report.time("ordinary ideal", || build_ordinary_ideal(config, &zero))?;
    let lambda = report.time("lambda ideal", || build_lambda_ideal(config, &zero))?;
    report.fact("ordinary ideal generators", ordinary.display());
    report.fact("lambda ideal generators", lambda.display());
    let pres = report.time("presentation", || build_bb_presentation(config, GammaSet::Interior, &zero, bound))?;
    report.fact("presentation generators", &pres.module_generators);
    report.fact("presentation relations", pres.relation_schemas.len());

    let ring = report.time("cohomology", || cohomology_ring(&fan))?;
    let chern = chern_classes(&ring, &beta)?;
    let bc = bundle_cohomology(&ring, &chern)?;
    let h = bc.pi_star(&ring.divisor(0));
    let g = bc.gamma();
    let gg = bc.mul(&g, &g);
    let three_hg: Vec<Q> = bc.mul(&h, &g).iter().map(|x| x * q(3)).collect();
    report.fact("gamma^2", qstrs(&gg));
    report.check("gamma^2 = 3 H gamma", gg == three_hg, None);
    report.check("Ker N = Im i0*", bc.kernel_matches_i0_image(), None);

    let gs = report.time("graded structure", || graded_structure(&bc))?;
    let jordan = gs.weight.jordan_type();
    report.fact("jordan type", &jordan);
    report.check("Jordan type (4,1,1)", jordan == vec![4, 1, 1], None);
    let cok_expected = BTreeMap::from([(-3, 2), (0, 1)]);
    let ker_expected = BTreeMap::from([(-6, 1), (-3, 2)]);
    report.check("Cok N graded dims", gs.cok_graded_dims == cok_expected, Some(dims_display(&gs.cok_graded_dims)));
    report.check("Ker N graded dims", gs.ker_graded_dims == ker_expected, Some(dims_display(&gs.ker_graded_dims)));
    report.check("graded pairings nondegenerate", gs.all_nondegenerate(), None);

    let nps = poincare_model(&bc);
    let pair = report.time("mixed models", || mixed_tep_assemble(&nps))?;
    for (label, model, expected) in [("Cok", &pair.cok, &gs.cok_graded_dims), ("Ker", &pair.ker, &gs.ker_graded_dims)] {
        let v = mixed_tep_validate(model);
        report.check(format!("{label} mixed model valid"), v.passed(), (!v.passed()).then(|| v.failures().join("; ")));
        report.check(
            format!("{label} mixed model grading matches cohomology"),
            model.graded_dims() == *expected,
            Some(dims_display(&model.graded_dims())),
        );
    }
    Ok(())
}
