use super::cone::dual_extreme_rays;
use super::{LatticeError, PointConfiguration};
use crate::linalg::QMatrix;
use serde::Serialize;
use std::collections::BTreeSet;

/// Largest number of points accepted by the face enumeration.
pub const FACE_POINT_LIMIT: usize = 12;

/// A face of `Conv(A ∪ {0})`. Index 0 stands for the origin, index `j` for `a_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dimension: usize,
    pub vertex_set: Vec<usize>,
    pub index_set: Vec<usize>,
    pub contains_zero: bool,
    /// False only for the whole polytope.
    pub proper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn find(&self, index_set: &[usize]) -> Option<&Face> {
        self.faces.iter().find(|f| f.index_set == index_set)
    }

    pub fn without_zero(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.contains_zero)
    }

    pub fn full(&self) -> &Face {
        self.faces.iter().find(|f| !f.proper).expect("face lattice always contains the polytope")
    }
}

fn homogenized(config: &PointConfiguration) -> Vec<Vec<i64>> {
    let n = config.rank();
    let mut out = vec![{
        let mut v = vec![0i64; n + 1];
        v[0] = 1;
        v
    }];
    for a in config.points() {
        let mut v = vec![1i64];
        v.extend(a.iter().copied());
        out.push(v);
    }
    out
}

fn affine_dim(h: &[Vec<i64>], set: &BTreeSet<usize>) -> usize {
    let rows: Vec<Vec<i64>> = set.iter().map(|&i| h[i].clone()).collect();
    QMatrix::from_i64(&rows).rank() - 1
}

pub fn faces(config: &PointConfiguration) -> Result<FaceLattice, LatticeError> {
    let m = config.len();
    if m > FACE_POINT_LIMIT {
        return Err(LatticeError::TooManyPoints { m, limit: FACE_POINT_LIMIT });
    }
    let h = homogenized(config);
    let n1 = config.rank() + 1;
    let facets: Vec<BTreeSet<usize>> = dual_extreme_rays(&h, n1)
        .iter()
        .map(|u| (0..=m).filter(|&i| h[i].iter().zip(u).map(|(a, b)| a * b).sum::<i64>() == 0).collect())
        .collect();
    let full: BTreeSet<usize> = (0..=m).collect();
    let mut all: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    all.insert(full.clone());
    let mut frontier: Vec<BTreeSet<usize>> = facets.clone();
    while let Some(f) = frontier.pop() {
        if f.is_empty() || !all.insert(f.clone()) {
            continue;
        }
        for g in &facets {
            let inter: BTreeSet<usize> = f.intersection(g).copied().collect();
            if !inter.is_empty() && !all.contains(&inter) {
                frontier.push(inter);
            }
        }
    }
    // Smallest face through each point decides whether the point is a vertex.
    let is_vertex: Vec<bool> = (0..=m)
        .map(|i| {
            let mut smallest = full.clone();
            for f in facets.iter().filter(|f| f.contains(&i)) {
                smallest = smallest.intersection(f).copied().collect();
            }
            affine_dim(&h, &smallest) == 0
        })
        .collect();
    let mut faces: Vec<Face> = all
        .into_iter()
        .map(|s| Face {
            dimension: affine_dim(&h, &s),
            vertex_set: s.iter().copied().filter(|&i| is_vertex[i]).collect(),
            contains_zero: s.contains(&0),
            proper: s != full,
            index_set: s.into_iter().collect(),
        })
        .collect();
    faces.sort_by(|a, b| a.dimension.cmp(&b.dimension).then_with(|| a.index_set.cmp(&b.index_set)));
    Ok(FaceLattice { faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(n: usize, pts: &[&[i64]]) -> PointConfiguration {
        PointConfiguration::new(n, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn unit_segment() {
        let fl = faces(&cfg(1, &[&[1]])).unwrap();
        let sets: Vec<Vec<usize>> = fl.faces.iter().map(|f| f.index_set.clone()).collect();
        assert_eq!(sets, vec![vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn two_three_segment() {
        let fl = faces(&cfg(1, &[&[2], &[3]])).unwrap();
        let sets: Vec<Vec<usize>> = fl.faces.iter().map(|f| f.index_set.clone()).collect();
        assert_eq!(sets, vec![vec![0], vec![2], vec![0, 1, 2]]);
        let top = fl.find(&[2]).unwrap();
        assert!(!top.contains_zero);
        assert_eq!(fl.full().vertex_set, vec![0, 2]);
    }

    #[test]
    fn gauss_triangle() {
        let fl = faces(&cfg(2, &[&[1, 0], &[1, 1], &[1, 2]])).unwrap();
        assert_eq!(fl.faces.len(), 7);
        let edge = fl.find(&[1, 2, 3]).unwrap();
        assert_eq!(edge.dimension, 1);
        assert_eq!(edge.vertex_set, vec![1, 3]);
        assert!(!edge.contains_zero);
        let no_zero: Vec<Vec<usize>> = fl.without_zero().map(|f| f.index_set.clone()).collect();
        assert_eq!(no_zero, vec![vec![1], vec![3], vec![1, 2, 3]]);
    }

    #[test]
    fn rejects_large_inputs() {
        let pts: Vec<Vec<i64>> = (1..=13).map(|i| vec![i]).collect();
        let c = PointConfiguration::new(1, pts).unwrap();
        assert!(matches!(faces(&c), Err(LatticeError::TooManyPoints { .. })));
    }

    proptest! {
        #[test]
        fn intersections_of_faces_are_faces(
            rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 2..6)
        ) {
            let Ok(c) = PointConfiguration::new(2, rows) else { return Ok(()); };
            let fl = faces(&c).unwrap();
            prop_assert_eq!(fl.faces.iter().filter(|f| !f.proper).count(), 1);
            for f in &fl.faces {
                for g in &fl.faces {
                    let inter: Vec<usize> = f.index_set.iter().copied().filter(|i| g.index_set.contains(i)).collect();
                    if !inter.is_empty() {
                        prop_assert!(fl.find(&inter).is_some());
                    }
                }
                // Every vertex of a face is a 0-dimensional face.
                for v in &f.vertex_set {
                    prop_assert!(fl.faces.iter().any(|g| g.dimension == 0 && g.index_set.contains(v)));
                }
            }
        }
    }
}
