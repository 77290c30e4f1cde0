use super::PointConfiguration;
use crate::intmat::{self, gcd};
use crate::linalg::QMatrix;
use crate::rational::Q;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// `K_R(A) = {v : <u, v> >= 0 for every facet normal u}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeDescription {
    /// Primitive inward normals, sorted lexicographically.
    pub facet_normals: Vec<Vec<i64>>,
    /// Primitive extreme rays when the cone is pointed; otherwise the
    /// primitive directions of all generators.
    pub ray_generators: Vec<Vec<i64>>,
    pub pointed: bool,
}

impl ConeDescription {
    pub fn contains(&self, c: &[i64]) -> bool {
        self.facet_normals.iter().all(|u| pairing(u, c) >= 0)
    }

    pub fn contains_interior(&self, c: &[i64]) -> bool {
        self.facet_normals.iter().all(|u| pairing(u, c) > 0)
    }

    /// A covector strictly positive on every nonzero point of a pointed cone.
    pub fn positive_functional(&self) -> Option<Vec<i64>> {
        if !self.pointed {
            return None;
        }
        let n = self.facet_normals.first()?.len();
        let mut u = vec![0i64; n];
        for f in &self.facet_normals {
            for (x, y) in u.iter_mut().zip(f) {
                *x += y;
            }
        }
        Some(u)
    }
}

pub(crate) fn pairing(u: &[i64], c: &[i64]) -> i64 {
    u.iter().zip(c).map(|(a, b)| a * b).sum()
}

fn pairing128(u: &[i128], c: &[i64]) -> i128 {
    u.iter().zip(c).map(|(a, &b)| a * b as i128).sum()
}

fn rank_of_rows(rows: &[&Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let owned: Vec<Vec<i64>> = rows.iter().map(|r| (*r).clone()).collect();
    QMatrix::from_i64(&owned).rank()
}

/// Extreme rays of the pointed cone `{u : <u, h> >= 0 for h in constraints}`,
/// where the constraints span `R^n`, by the double-description method.
pub(crate) fn dual_extreme_rays(constraints: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // Start from n independent constraints.
    let mut basis_idx: Vec<usize> = Vec::new();
    for i in 0..constraints.len() {
        let mut rows: Vec<&Vec<i64>> = basis_idx.iter().map(|&j| &constraints[j]).collect();
        rows.push(&constraints[i]);
        if rank_of_rows(&rows) == rows.len() {
            basis_idx.push(i);
            if basis_idx.len() == n {
                break;
            }
        }
    }
    assert_eq!(basis_idx.len(), n, "constraints must span the ambient space");
    let b = QMatrix::from_i64(&basis_idx.iter().map(|&i| constraints[i].clone()).collect::<Vec<_>>());
    let binv = b.inverse().expect("independent constraints");
    let mut rays: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let col = binv.col(j);
            let l = col.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let scale = Q::from_integer(l);
            let ints: Vec<i128> = col.iter().map(|x| (x * &scale).to_integer().to_i128().unwrap()).collect();
            intmat::primitive(&ints)
        })
        .collect();
    let mut processed: Vec<usize> = basis_idx.clone();
    for (h_idx, h) in constraints.iter().enumerate() {
        if basis_idx.contains(&h_idx) {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| pairing128(r, h)).collect();
        let tight_sets: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| processed.iter().copied().filter(|&i| pairing128(r, &constraints[i]) == 0).collect())
            .collect();
        let mut next: Vec<Vec<i128>> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if *v >= 0 {
                next.push(r.clone());
            }
        }
        for (i, p) in rays.iter().enumerate() {
            if vals[i] <= 0 {
                continue;
            }
            for (j, qv) in rays.iter().enumerate() {
                if vals[j] >= 0 {
                    continue;
                }
                let common: Vec<usize> = tight_sets[i].intersection(&tight_sets[j]).copied().collect();
                if n < 2 || common.len() < n - 2 {
                    continue;
                }
                let rows: Vec<&Vec<i64>> = common.iter().map(|&k| &constraints[k]).collect();
                if rank_of_rows(&rows) != n - 2 {
                    continue;
                }
                let new: Vec<i128> = p.iter().zip(qv).map(|(a, b)| vals[i] * b - vals[j] * a).collect();
                next.push(intmat::primitive(&new));
            }
        }
        let mut dedup: Vec<Vec<i128>> = Vec::new();
        for r in next {
            if r.iter().any(|x| !x.is_zero()) && !dedup.contains(&r) {
                dedup.push(r);
            }
        }
        rays = dedup;
        processed.push(h_idx);
    }
    let mut out: Vec<Vec<i64>> = rays.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    out.sort();
    out
}

pub fn cone_facets(config: &PointConfiguration) -> ConeDescription {
    let n = config.rank();
    let facet_normals = dual_extreme_rays(config.points(), n);
    let pointed = !facet_normals.is_empty() && rank_of_rows(&facet_normals.iter().collect::<Vec<_>>()) == n;
    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    for a in config.points() {
        let tight: Vec<&Vec<i64>> = facet_normals.iter().filter(|u| pairing(u, a) == 0).collect();
        if !pointed || rank_of_rows(&tight) + 1 == n {
            let g = a.iter().fold(0i128, |acc, &x| gcd(acc, x as i128)) as i64;
            rays.insert(a.iter().map(|x| x / g).collect());
        }
    }
    ConeDescription { facet_normals, ray_generators: rays.into_iter().collect(), pointed }
}
