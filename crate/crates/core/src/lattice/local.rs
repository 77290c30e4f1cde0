use super::{LatticeError, PointConfiguration};
use crate::fan::Fan;
use serde::Serialize;

/// Configuration in `Z^{n+r}` attached to a fan and split line bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub config: PointConfiguration,
    /// `-(n_1 + ... + n_r)`, absent when `r = 0`.
    pub extra_vector: Option<Vec<i64>>,
    /// The bundle rows are taken as nef without verification.
    pub nef_assumed: bool,
}

/// Builds `a_i = (rho_i, beta_{1i}, .., beta_{ri})` for each ray, then the
/// unit vectors `n_1..n_r` of the bundle directions.
pub fn build_local_data(fan: &Fan, beta: &[Vec<i64>]) -> Result<LocalData, LatticeError> {
    fan.validate()?;
    let n = fan.dim();
    let m = fan.num_rays();
    let r = beta.len();
    for (row_idx, row) in beta.iter().enumerate() {
        if row.len() != m {
            return Err(LatticeError::BetaShape { rows: r, cols: row.len(), expected_cols: m });
        }
        if let Some(col) = row.iter().position(|&x| x < 0) {
            return Err(LatticeError::NegativeBeta { row: row_idx, col });
        }
    }
    let mut points = Vec::with_capacity(m + r);
    for (i, ray) in fan.rays.iter().enumerate() {
        let mut p = ray.clone();
        p.extend(beta.iter().map(|row| row[i]));
        points.push(p);
    }
    for j in 0..r {
        let mut p = vec![0i64; n + r];
        p[n + j] = 1;
        points.push(p);
    }
    let extra_vector = (r > 0).then(|| {
        let mut v = vec![0i64; n + r];
        for x in &mut v[n..] {
            *x = -1;
        }
        v
    });
    Ok(LocalData { config: PointConfiguration::new(n + r, points)?, extra_vector, nef_assumed: true })
}
