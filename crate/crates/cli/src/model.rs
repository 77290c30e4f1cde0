//! On-disk form of a pairing model with a nilpotent operator. Entries are
//! rational strings such as "3" or "-1/2".

use anyhow::{anyhow, bail, Result};
use serde::{Deserialize, Serialize};
use toric_gkz::linalg::QMatrix;
use toric_gkz::rational::{fmt_q, parse_q};
use toric_gkz::tep::{LMatrix, NilpotentPairedSpace, PairingModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingTerm {
    pub power: i64,
    pub matrix: Vec<Vec<String>>,
}

/// `M = Σ λ^power matrix`, `N = λ^{-1} nilpotent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TepModelFile {
    pub weight: i64,
    pub pairing: Vec<PairingTerm>,
    pub nilpotent: Vec<Vec<String>>,
}

fn matrix_from(rows: &[Vec<String>], what: &str) -> Result<QMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_q(x).map_err(|e| anyhow!("{what}: {e}"))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) || parsed.len() != cols {
        bail!("{what}: matrix must be square");
    }
    Ok(QMatrix::from_rows(&parsed))
}

fn matrix_to(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

impl TepModelFile {
    /// Unvalidated structures, so the laws can be reported as checks.
    pub fn to_space(&self) -> Result<NilpotentPairedSpace> {
        let n0 = matrix_from(&self.nilpotent, "nilpotent")?;
        let mut parts = Vec::new();
        for t in &self.pairing {
            let m = matrix_from(&t.matrix, "pairing")?;
            if m.nrows() != n0.nrows() {
                bail!("pairing term of power {} has rank {}, nilpotent has rank {}", t.power, m.nrows(), n0.nrows());
            }
            parts.push((t.power, m));
        }
        if parts.is_empty() {
            bail!("pairing has no terms");
        }
        let matrix = LMatrix::from_coefficients(&parts);
        Ok(NilpotentPairedSpace { pairing: PairingModel { weight: self.weight, matrix }, n0 })
    }

    pub fn from_space(nps: &NilpotentPairedSpace) -> Self {
        let m = &nps.pairing.matrix;
        let mut pairing = Vec::new();
        let lo = (0..m.nrows()).flat_map(|i| (0..m.ncols()).filter_map(move |j| m.get(i, j).min_degree())).min();
        let hi = (0..m.nrows()).flat_map(|i| (0..m.ncols()).filter_map(move |j| m.get(i, j).max_degree())).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            for k in lo..=hi {
                let c = m.coefficient(k);
                if !c.is_zero() {
                    pairing.push(PairingTerm { power: k, matrix: matrix_to(&c) });
                }
            }
        }
        TepModelFile { weight: nps.pairing.weight, pairing, nilpotent: matrix_to(&nps.n0) }
    }
}
