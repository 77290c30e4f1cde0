//! Increasing filtrations of finite-dimensional spaces and their Rees modules.

use super::TepError;
use crate::linalg::{extend_basis, span_basis, span_dim, subspace_contains, subspace_eq, unit_vector};
use crate::rational::Q;
use std::collections::BTreeMap;

/// `F_j` is the span stored at the largest jump index `<= j`, and zero below the first jump.
#[derive(Debug, Clone)]
pub struct FilteredSpace {
    pub dim: usize,
    pub steps: BTreeMap<i64, Vec<Vec<Q>>>,
}

impl FilteredSpace {
    pub fn new(dim: usize, steps: BTreeMap<i64, Vec<Vec<Q>>>) -> Result<Self, TepError> {
        let fs = FilteredSpace { dim, steps };
        fs.validate()?;
        Ok(fs.normalized())
    }

    /// Single jump: `F_j = 0` for `j < at`, everything from `at` on.
    pub fn trivial(dim: usize, at: i64) -> Self {
        let mut steps = BTreeMap::new();
        steps.insert(at, (0..dim).map(|i| unit_vector(dim, i)).collect());
        FilteredSpace { dim, steps }.normalized()
    }

    pub fn validate(&self) -> Result<(), TepError> {
        let mut prev: Vec<Vec<Q>> = Vec::new();
        for (j, vs) in &self.steps {
            if vs.iter().any(|v| v.len() != self.dim) {
                return Err(TepError::Dimension { expected: self.dim, context: format!("filtration step {j}") });
            }
            if !subspace_contains(vs, &prev) {
                return Err(TepError::NotIncreasing { index: *j });
            }
            prev = vs.clone();
        }
        if self.dim > 0 && span_dim(&prev) != self.dim {
            return Err(TepError::NotExhaustive);
        }
        Ok(())
    }

    /// Echelon bases, with repeated steps removed.
    fn normalized(&self) -> Self {
        let mut steps = BTreeMap::new();
        let mut prev_dim = 0;
        for (j, vs) in &self.steps {
            let b = span_basis(vs, self.dim);
            if b.len() > prev_dim {
                prev_dim = b.len();
                steps.insert(*j, b);
            }
        }
        FilteredSpace { dim: self.dim, steps }
    }

    pub fn step(&self, j: i64) -> Vec<Vec<Q>> {
        self.steps.range(..=j).next_back().map(|(_, v)| v.clone()).unwrap_or_default()
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let mut prev = 0;
        for (j, vs) in &self.steps {
            out.insert(*j, vs.len() - prev);
            prev = vs.len();
        }
        out
    }
}

impl PartialEq for FilteredSpace {
    fn eq(&self, other: &Self) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.dim == b.dim
            && a.steps.len() == b.steps.len()
            && a.steps.iter().zip(&b.steps).all(|((i, u), (j, v))| i == j && subspace_eq(u, v))
    }
}

/// Free graded module over `Q[λ]` with generators `λ^{d_i} v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesModule {
    pub dim: usize,
    pub generators: Vec<(i64, Vec<Q>)>,
}

impl ReesModule {
    pub fn graded_ranks(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (d, _) in &self.generators {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }
}

/// `Σ_j F_j λ^j`, generated by an adapted basis placed at its jump degrees.
pub fn rees(fs: &FilteredSpace) -> ReesModule {
    let mut generators = Vec::new();
    let mut have: Vec<Vec<Q>> = Vec::new();
    for (j, vs) in &fs.steps {
        for v in extend_basis(&have, vs) {
            have.push(v.clone());
            generators.push((*j, v));
        }
    }
    ReesModule { dim: fs.dim, generators }
}

/// Inverse of [`rees`]; rejects generator sets that are not a basis.
pub fn unrees(module: &ReesModule) -> Result<FilteredSpace, TepError> {
    let vs: Vec<Vec<Q>> = module.generators.iter().map(|(_, v)| v.clone()).collect();
    if vs.iter().any(|v| v.len() != module.dim) {
        return Err(TepError::Dimension { expected: module.dim, context: "Rees generator".into() });
    }
    if vs.len() != module.dim || span_dim(&vs) != module.dim {
        return Err(TepError::NotFree);
    }
    let mut steps = BTreeMap::new();
    for (d, _) in &module.generators {
        let below: Vec<Vec<Q>> = module.generators.iter().filter(|(e, _)| e <= d).map(|(_, v)| v.clone()).collect();
        steps.insert(*d, below);
    }
    FilteredSpace::new(module.dim, steps)
}
