//! Simplicial fans given by rays and maximal cones.

use crate::intmat;
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("fan has no rays")]
    Empty,
    #[error("ray {index} has length {found}, expected {expected}")]
    RayDimension { index: usize, expected: usize, found: usize },
    #[error("ray {index} is zero")]
    ZeroRay { index: usize },
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("cone {cone} refers to missing ray {ray}")]
    BadRayIndex { cone: usize, ray: usize },
    #[error("cone {cone} has {found} rays, expected {expected} (fan not pure)")]
    NotPure { cone: usize, expected: usize, found: usize },
    #[error("cone {cone} is not smooth (determinant {det})")]
    NotSmooth { cone: usize, det: i64 },
    #[error("wall {wall:?} of cone {cone} lies in {count} maximal cones, expected 2")]
    WallCondition { cone: usize, wall: Vec<usize>, count: usize },
    #[error("maximal cones do not form a connected complex")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        let fan = Fan {
            rays,
            cones: cones.into_iter().map(|c| c.into_iter().sorted().collect()).collect(),
        };
        fan.validate()?;
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, |r| r.len())
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Fan of projective space: rays `e_1..e_n, -(e_1+..+e_n)`.
    pub fn projective(n: usize) -> Self {
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n).combinations(n).collect();
        Fan { rays, cones }
    }

    pub fn product(&self, other: &Fan) -> Self {
        let (n1, n2) = (self.dim(), other.dim());
        let mut rays = Vec::new();
        for r in &self.rays {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(0, n2));
            rays.push(v);
        }
        for r in &other.rays {
            let mut v = vec![0; n1];
            v.extend(r.iter().copied());
            rays.push(v);
        }
        let off = self.rays.len();
        let cones = self
            .cones
            .iter()
            .cartesian_product(&other.cones)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|i| i + off)).collect())
            .collect();
        Fan { rays, cones }
    }

    pub fn validate(&self) -> Result<(), FanError> {
        let n = self.dim();
        if self.rays.is_empty() || n == 0 {
            return Err(FanError::Empty);
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != n {
                return Err(FanError::RayDimension { index: i, expected: n, found: r.len() });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(FanError::ZeroRay { index: i });
            }
            let g = r.iter().fold(0i128, |acc, &x| intmat::gcd(acc, x as i128));
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { index: i });
            }
        }
        for (ci, cone) in self.cones.iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= self.rays.len()) {
                return Err(FanError::BadRayIndex { cone: ci, ray: bad });
            }
            let distinct: BTreeSet<_> = cone.iter().collect();
            if cone.len() != n || distinct.len() != n {
                return Err(FanError::NotPure { cone: ci, expected: n, found: distinct.len() });
            }
            let m: intmat::IMat = cone.iter().map(|&i| self.rays[i].iter().map(|&x| x as i128).collect()).collect();
            let d = intmat::det(&m);
            if d.abs() != 1 {
                return Err(FanError::NotSmooth { cone: ci, det: d as i64 });
            }
        }
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.cones.iter().enumerate() {
            for wall in cone.iter().copied().combinations(n - 1) {
                walls.entry(wall).or_default().push(ci);
            }
        }
        for (ci, cone) in self.cones.iter().enumerate() {
            for wall in cone.iter().copied().combinations(n - 1) {
                let count = walls[&wall].len();
                if count != 2 {
                    return Err(FanError::WallCondition { cone: ci, wall, count });
                }
            }
        }
        // Dual graph through shared walls must be connected.
        let mut seen = vec![false; self.cones.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for wall in self.cones[c].iter().copied().combinations(n - 1) {
                for &other in &walls[&wall] {
                    if !seen[other] {
                        seen[other] = true;
                        queue.push_back(other);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(FanError::Disconnected);
        }
        Ok(())
    }

    /// True when the ray set `s` lies in some maximal cone.
    pub fn is_face(&self, s: &[usize]) -> bool {
        self.cones.iter().any(|c| s.iter().all(|i| c.contains(i)))
    }
}
