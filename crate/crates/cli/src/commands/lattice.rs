use super::required_path;
use crate::input::{integers, load_json};
use crate::report::RunReport;
use crate::{GammaChoice, LatticeArgs};
use anyhow::Result;
use toric_gkz::lattice::{
    cone_facets, faces, interior_test, kernel_lattice, saturation_check, semigroup_module_generators,
    PointConfiguration, SemigroupSpec,
};

pub fn run(args: &LatticeArgs, bound: u64, report: &mut RunReport) -> Result<()> {
    let path = required_path(&args.input)?;
    let config: PointConfiguration = load_json(report, path)?;
    let nothing_selected =
        !args.facets && !args.saturation && !args.faces && args.interior.is_none() && args.generators.is_none();
    report.fact("rank", config.rank());
    report.fact("points", config.points());

    let seq = report.time("kernel", || kernel_lattice(&config));
    report.fact("kernel basis", &seq.kernel_basis);
    let annihilated = seq.kernel_basis.iter().all(|k| config.combine(k).iter().all(|&x| x == 0));
    report.check("kernel basis lies in L_A", annihilated, None);

    if args.facets || nothing_selected {
        let cone = report.time("facets", || cone_facets(&config));
        report.fact("facet normals", &cone.facet_normals);
        report.fact("ray generators", &cone.ray_generators);
        report.fact("pointed", cone.pointed);
        let inside = config.points().iter().all(|a| cone.contains(a));
        report.check("points lie in the cone", inside, None);
    }
    if args.saturation || nothing_selected {
        let sat = report.time("saturation", || saturation_check(&config, bound))?;
        report.fact("saturated", sat.saturated);
        report.fact("witness", &sat.witness);
        report.fact("saturation points checked", sat.checked);
        report.fact("saturation bound", bound);
    }
    if let Some(c) = &args.interior {
        let c = integers(c)?;
        let inside = report.time("interior", || interior_test(&config, &c))?;
        report.fact(&format!("interior {c:?}"), inside);
    }
    if args.faces {
        let fl = report.time("faces", || faces(&config))?;
        let lines: Vec<String> = fl
            .faces
            .iter()
            .map(|f| {
                // The origin is index 0 and prints as `o`.
                let idx: Vec<String> =
                    f.index_set.iter().map(|&i| if i == 0 { "o".to_string() } else { i.to_string() }).collect();
                let whole = if f.proper { "" } else { " (whole polytope)" };
                format!("dim {} points {{{}}}{whole}", f.dimension, idx.join(","))
            })
            .collect();
        report.fact("faces", lines);
    }
    if let Some(choice) = args.generators {
        let spec = match choice {
            GammaChoice::All => SemigroupSpec::All,
            GammaChoice::Interior => SemigroupSpec::Interior,
        };
        let gens = report.time("generators", || semigroup_module_generators(&config, spec, bound))?;
        report.fact("module generators", gens);
    }
    Ok(())
}
