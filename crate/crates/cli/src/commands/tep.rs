use super::dims_display;
use crate::input::load_json;
use crate::model::TepModelFile;
use crate::report::RunReport;
use crate::TepArgs;
use anyhow::{bail, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_gkz::linalg::QMatrix;
use toric_gkz::rational::{q, qr, Q};
use toric_gkz::tep::{
    chain_form, conjugate, mixed_tep_assemble, mixed_tep_validate, primitive_ranks, specialize_pairing,
    specialize_via_right, weight_filtration, LMatrix, LaurentPoly, NilpotentPairedSpace, PairingModel,
};

/// Attempts at drawing a nondegenerate random model before giving up.
const RANDOM_ATTEMPTS: usize = 500;

fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

fn hankel(rng: &mut ChaCha8Rng, c: usize, skew: bool) -> Vec<Vec<Vec<Q>>> {
    let len = 4;
    let mut h = vec![vec![vec![q(0); len]; c]; c];
    for a in 0..c {
        for b in a..c {
            for t in 0..len {
                let v = rng.gen_range(-3..=3);
                if !skew {
                    h[a][b][t] = q(v);
                    h[b][a][t] = q(v);
                } else if a < b {
                    h[a][b][t] = q(v);
                    h[b][a][t] = q(-v);
                }
            }
        }
    }
    h
}

/// Jordan chains paired by Hankel forms, then conjugated by a random unipotent matrix.
pub fn random_model(dim: usize, rng: &mut ChaCha8Rng) -> Option<NilpotentPairedSpace> {
    if dim == 0 {
        return None;
    }
    for _ in 0..RANDOM_ATTEMPTS {
        let mut lengths = Vec::new();
        let mut left = dim;
        while left > 0 {
            let s = rng.gen_range(1..=left.min(4));
            lengths.push(s);
            left -= s;
        }
        let w = rng.gen_range(-3..=3i64);
        let (n0, g) = chain_form(&lengths, &hankel(rng, lengths.len(), false));
        let (_, a) = chain_form(&lengths, &hankel(rng, lengths.len(), true));
        let s = w.rem_euclid(2);
        let (even, odd) = if s == 0 { (g, a) } else { (a, g) };
        let Ok(pm) = PairingModel::new(w, LMatrix::from_coefficients(&[(w - s, even), (w - s + 1, odd)])) else {
            continue;
        };
        let Ok(base) = NilpotentPairedSpace::new(pm, n0) else { continue };
        let mut u = QMatrix::identity(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                u[(i, j)] = q(rng.gen_range(-1..=1));
            }
        }
        let Some(out) = conjugate(&base, &u) else { continue };
        if specialize_pairing(&out).is_ok() {
            return Some(out);
        }
    }
    None
}

pub fn run(args: &TepArgs, seed: u64, report: &mut RunReport) -> Result<()> {
    let mut nps = match (args.random, args.input.path()) {
        (Some(dim), _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            report.fact("random model", format!("rank {dim}, seed {seed}"));
            match random_model(dim, &mut rng) {
                Some(m) => m,
                None => bail!("no nondegenerate model of rank {dim} found"),
            }
        }
        (None, Some(path)) => {
            let file: TepModelFile = load_json(report, path)?;
            file.to_space()?
        }
        (None, None) => bail!("give a model file or --random DIM"),
    };
    report.fact("rank", nps.pairing.rank());
    report.fact("weight", nps.pairing.weight);

    report.check("symmetry law", nps.pairing.symmetry_holds(), None);
    report.check("pairing nondegenerate", nps.pairing.is_nondegenerate(), None);
    let nilpotent = weight_filtration(&nps.n0);
    report.check("N nilpotent", nilpotent.is_ok(), nilpotent.as_ref().err().map(|e| e.to_string()));
    report.check("N compatible with the pairing", nps.compatibility_holds(), None);
    if !report.passed() {
        return Ok(());
    }

    if let Some(a) = args.twist {
        let before = nps.pairing.clone();
        nps = nps.twist(a);
        let expected = before.matrix.scale(&LaurentPoly::monomial(-2 * a, sign(a)));
        report.fact("twist", a);
        report.check(
            "twist law",
            nps.pairing.weight == before.weight + 2 * a && nps.pairing.matrix == expected && nps.pairing.symmetry_holds(),
            Some(format!("weight {} -> {}", before.weight, nps.pairing.weight)),
        );
        report.check("twisted compatibility", nps.compatibility_holds(), None);
    }

    let wf = nps.weight_filtration();
    report.fact("jordan type", wf.jordan_type());
    report.fact("weight graded dims", dims_display(&wf.graded_dims()));
    report.fact("primitive ranks", dims_display(&primitive_ranks(&nps)));
    report.check("weight filtration characterization", wf.satisfies_characterization(), None);

    let w = nps.pairing.weight;
    let sp = report.time("specialization", || specialize_pairing(&nps))?;
    for p in &sp {
        let m = &p.pairing.matrix;
        let sym = p.pairing.weight == w + p.degree && p.pairing.symmetry_holds();
        report.check(format!("specialized pairing {} sign law", p.degree), sym, Some(format!("weight {}", p.pairing.weight)));
        // A nonzero value at a sample point certifies a nonzero determinant.
        let nondeg = !m.eval(&qr(7, 3)).det().is_zero() || p.pairing.is_nondegenerate();
        report.check(format!("specialized pairing {} nondegenerate", p.degree), nondeg, None);
        if p.degree >= 0 {
            let k = p.degree as usize;
            let same = specialize_via_right(&nps, k).is_some_and(|r| r == m.scale(&LaurentPoly::constant(sign(p.degree))));
            report.check(format!("specialized pairing {} right route", p.degree), same, None);
        }
    }

    let pair = report.time("mixed models", || mixed_tep_assemble(&nps))?;
    report.fact("cokernel graded dims", dims_display(&pair.cok.graded_dims()));
    report.fact("kernel graded dims", dims_display(&pair.ker.graded_dims()));
    for (label, model) in [("Cok", &pair.cok), ("Ker", &pair.ker)] {
        let v = mixed_tep_validate(model);
        let detail = if v.passed() { None } else { Some(v.failures().join("; ")) };
        report.check(format!("{label} mixed model valid"), v.passed(), detail);
    }
    Ok(())
}
