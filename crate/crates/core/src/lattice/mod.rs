//! Point configurations in `Z^n`: kernel lattices, cones, semigroups, faces.

mod cone;
mod faces;
mod kernel;
mod local;
mod semigroup;

pub use cone::{cone_facets, ConeDescription};
pub use faces::{faces, Face, FaceLattice, FACE_POINT_LIMIT};
pub use kernel::{kernel_lattice, LatticeSequence};
pub use local::{build_local_data, LocalData};
pub use semigroup::{
    interior_test, representation, saturation_check, semigroup_membership, semigroup_module_generators,
    SaturationReport, SemigroupSpec,
};

use crate::intmat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("configuration has no points")]
    Empty,
    #[error("rank must be positive")]
    ZeroRank,
    #[error("point {index} has length {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("point {index} is zero")]
    ZeroPoint { index: usize },
    #[error("points do not generate Z^n: elementary divisor {position} is {divisor}")]
    NotGenerating { position: usize, divisor: i64 },
    #[error("bound {bound} possibly insufficient for {target:?}")]
    BoundInsufficient { bound: u64, target: Vec<i64> },
    #[error("{m} points exceed the face enumeration limit {limit}")]
    TooManyPoints { m: usize, limit: usize },
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("beta matrix is {rows}x{cols}, expected r x {expected_cols}")]
    BetaShape { rows: usize, cols: usize, expected_cols: usize },
    #[error("beta matrix entry ({row},{col}) is negative")]
    NegativeBeta { row: usize, col: usize },
    #[error("interior of the cone contains no lattice point within the bound")]
    EmptyInterior,
    #[error(transparent)]
    Fan(#[from] crate::fan::FanError),
}

/// A finite list of nonzero integer vectors generating `Z^n` as a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct PointConfiguration {
    n: usize,
    points: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    n: usize,
    points: Vec<Vec<i64>>,
}

impl TryFrom<RawConfiguration> for PointConfiguration {
    type Error = LatticeError;
    fn try_from(raw: RawConfiguration) -> Result<Self, LatticeError> {
        PointConfiguration::new(raw.n, raw.points)
    }
}

impl From<PointConfiguration> for RawConfiguration {
    fn from(c: PointConfiguration) -> Self {
        RawConfiguration { n: c.n, points: c.points }
    }
}

impl PointConfiguration {
    pub fn new(n: usize, points: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroRank);
        }
        if points.is_empty() {
            return Err(LatticeError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(LatticeError::DimensionMismatch { index: i, expected: n, found: p.len() });
            }
            if p.iter().all(|&x| x == 0) {
                return Err(LatticeError::ZeroPoint { index: i });
            }
        }
        let snf = intmat::smith(&intmat::from_i64(&points), n);
        for pos in 0..n {
            let d = snf.diag.get(pos).copied().unwrap_or(0);
            if d != 1 {
                return Err(LatticeError::NotGenerating { position: pos, divisor: d as i64 });
            }
        }
        Ok(PointConfiguration { n, points })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, j: usize) -> &[i64] {
        &self.points[j]
    }

    /// `sum_j p_j a_j`.
    pub fn combine(&self, p: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        for (pj, a) in p.iter().zip(&self.points) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += pj * x;
            }
        }
        out
    }

    pub fn check_vector(&self, c: &[i64]) -> Result<(), LatticeError> {
        if c.len() != self.n {
            return Err(LatticeError::VectorLength { expected: self.n, found: c.len() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_generation() {
        assert!(PointConfiguration::new(1, vec![vec![2], vec![3]]).is_ok());
        let err = PointConfiguration::new(1, vec![vec![2], vec![4]]).unwrap_err();
        assert_eq!(err, LatticeError::NotGenerating { position: 0, divisor: 2 });
        let err = PointConfiguration::new(2, vec![vec![1, 0], vec![2, 0]]).unwrap_err();
        assert_eq!(err, LatticeError::NotGenerating { position: 1, divisor: 0 });
        assert!(matches!(PointConfiguration::new(2, vec![vec![0, 0]]), Err(LatticeError::ZeroPoint { index: 0 })));
    }

    #[test]
    fn json_round_trip_validates() {
        let c: PointConfiguration = serde_json::from_str(r#"{"n":1,"points":[[2],[3]]}"#).unwrap();
        assert_eq!(c.len(), 2);
        assert!(serde_json::from_str::<PointConfiguration>(r#"{"n":1,"points":[[2],[4]]}"#).is_err());
        let back = serde_json::to_string(&c).unwrap();
        assert_eq!(back, r#"{"n":1,"points":[[2],[3]]}"#);
    }
}
