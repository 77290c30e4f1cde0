use super::{qstrs, required_path};
use crate::input::{integers, load_json, load_text, rationals};
use crate::report::RunReport;
use crate::{GammaChoice, GkzArgs};
use anyhow::{anyhow, bail, Context, Result};
use num_traits::Zero;
use std::path::Path;
use toric_gkz::gkz::{
    build_bb_presentation, build_lambda_ideal, build_ordinary_ideal, gamma_series, intertwiner, residual, GammaSet,
    GkzError, LaurentSeries, SeriesSolution,
};
use toric_gkz::lattice::PointConfiguration;
use toric_gkz::rational::{fmt_q, q, to_f64, Q};

/// Series listed in full only up to this many terms.
const SERIES_DISPLAY_TERMS: usize = 20;

fn vector_or_zero(arg: &Option<String>, len: usize, what: &str) -> Result<Vec<Q>> {
    match arg {
        None => Ok(vec![Q::zero(); len]),
        Some(s) => {
            let v = rationals(s)?;
            if v.len() != len {
                bail!("{what} needs {len} entries, got {}", v.len());
            }
            Ok(v)
        }
    }
}

/// A series file holds either a full solution record or a bare series.
fn load_series(report: &mut RunReport, path: &Path) -> Result<(LaurentSeries, Option<Vec<i64>>)> {
    let text = load_text(report, path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    if value.get("series").is_some() {
        let sol: SeriesSolution =
            serde_json::from_value(value).with_context(|| format!("{}: not a series solution", path.display()))?;
        Ok((sol.series, Some(sol.gamma)))
    } else {
        let s: LaurentSeries =
            serde_json::from_value(value).with_context(|| format!("{}: not a series", path.display()))?;
        Ok((s, None))
    }
}

pub fn run(args: &GkzArgs, bound: u64, report: &mut RunReport) -> Result<()> {
    let path = required_path(&args.input)?;
    let config: PointConfiguration = load_json(report, path)?;
    let n = config.rank();
    let gamma = vector_or_zero(&args.gamma, n, "--gamma")?;
    let beta = vector_or_zero(&args.beta, n, "--beta")?;
    let only_ideal = args.presentation.is_none()
        && args.intertwine.is_none()
        && args.series.is_none()
        && args.residual.is_none();

    if only_ideal || args.lambda {
        let ideal = report.time("ideal", || {
            if args.lambda {
                build_lambda_ideal(&config, &gamma)
            } else {
                build_ordinary_ideal(&config, &gamma)
            }
        })?;
        report.fact("level", if args.lambda { "lambda" } else { "ordinary" });
        report.fact("gamma", qstrs(&gamma));
        report.fact("box vectors", &ideal.box_vectors);
        report.fact("ideal generators", ideal.display());
    }

    if let Some(choice) = args.presentation {
        let set = match choice {
            GammaChoice::All => GammaSet::All,
            GammaChoice::Interior => GammaSet::Interior,
        };
        let pres = report.time("presentation", || build_bb_presentation(&config, set, &beta, bound))?;
        report.fact("beta", qstrs(&beta));
        report.fact("module generators", &pres.module_generators);
        report.fact("relations", pres.relation_schemas.iter().map(|r| r.display()).collect::<Vec<_>>());
    }

    if let Some(pair) = &args.intertwine {
        let c1 = integers(&pair[0])?;
        let c2 = integers(&pair[1])?;
        match report.time("intertwiner", || intertwiner(&config, &beta, &c1, &c2, bound)) {
            Ok(it) => {
                report.fact("intertwiner exponent", &it.b);
                report.fact("intertwiner (d level)", it.d_level.to_string());
                report.fact("intertwiner (lambda level)", it.lambda_level.to_string());
                report.check("intertwining identities", it.report.all(), Some(format!("{:?}", it.report)));
            }
            Err(GkzError::IdentityFailure(r)) => {
                report.check("intertwining identities", false, Some(format!("{r:?}")));
            }
            Err(e @ GkzError::NoRepresentation { .. }) => {
                report.check("c1 - c2 lies in the semigroup", false, Some(e.to_string()));
            }
            Err(e) => return Err(e.into()),
        }
    }

    if let Some(v) = &args.series {
        let v = integers(v)?;
        let g = config.combine(&v);
        let sol = report.time("series", || gamma_series(&config, &g, &v, args.radius))?;
        report.fact("series gamma", &sol.gamma);
        report.fact("series radius", sol.radius);
        report.fact("series terms", sol.series.len());
        if sol.series.len() <= SERIES_DISPLAY_TERMS {
            report.fact("series", sol.series.display());
        }
        if let Some(out) = &args.write_series {
            let text = serde_json::to_string_pretty(&sol)?;
            std::fs::write(out, text + "\n").with_context(|| format!("cannot write {}", out.display()))?;
            report.fact("series written to", out.display().to_string());
        }
    }

    if let Some(pair) = &args.residual {
        let (series, series_gamma) = load_series(report, Path::new(&pair[0]))?;
        if series.nvars() != config.len() {
            bail!("series has {} variables, configuration has {} points", series.nvars(), config.len());
        }
        let point = rationals(&pair[1])?;
        let g: Vec<Q> = match series_gamma {
            Some(g) => g.into_iter().map(q).collect(),
            None => gamma.clone(),
        };
        let ideal = build_ordinary_ideal(&config, &g)?;
        let value = report.time("residual", || residual(&ideal, &series, &point))?;
        report.fact("residual", fmt_q(&value));
        let ok = to_f64(&value) <= args.tolerance;
        report.check(
            "residual below tolerance",
            ok,
            Some(format!("{:.3e} against {:.1e}", to_f64(&value), args.tolerance)),
        );
    }
    Ok(())
}
