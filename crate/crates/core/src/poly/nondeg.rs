//! Face-wise certificate that a Laurent family has no critical points at infinity.

use super::groebner::GroebnerError;
use super::ideal::{saturate, variable_product, IdealBasis};
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use crate::lattice::{faces, LatticeError, PointConfiguration};
use crate::rational::{q, Q};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NondegError {
    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientCount { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceVerdict {
    pub index_set: Vec<usize>,
    pub dimension: usize,
    pub proper: bool,
    pub nondegenerate: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NondegReport {
    pub faces: Vec<FaceVerdict>,
    pub nondegenerate: bool,
}

impl NondegReport {
    pub fn verdict_for(&self, index_set: &[usize]) -> Option<&FaceVerdict> {
        self.faces.iter().find(|f| f.index_set == index_set)
    }
}

/// Laurent terms `c t^a` moved into the polynomial ring by a common monomial shift.
fn shifted(terms: &[(Vec<i64>, Q)], shift: &[i64]) -> Polynomial {
    let n = shift.len();
    Polynomial::from_terms(
        n,
        terms.iter().map(|(a, c)| (a.iter().zip(shift).map(|(x, s)| (x - s) as u32).collect(), c.clone())),
    )
}

/// Face polynomial `F_sigma = sum_{a_j in sigma} gamma_j t^{a_j}` for index set
/// entries `1..=m` (index 0, the origin, contributes nothing).
pub fn face_terms(config: &PointConfiguration, gamma: &[Q], index_set: &[usize]) -> Vec<(Vec<i64>, Q)> {
    index_set
        .iter()
        .filter(|&&i| i > 0)
        .map(|&i| (config.point(i - 1).to_vec(), gamma[i - 1].clone()))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Decides whether `<t_i dF/dt_i>` (and `F` itself for a non-proper face) has a
/// common zero on the torus, via saturation at `t_1 ... t_n`.
pub fn face_is_nondegenerate(
    terms: &[(Vec<i64>, Q)],
    n: usize,
    include_face_polynomial: bool,
) -> Result<(bool, Option<String>), GroebnerError> {
    if terms.is_empty() {
        return Ok((false, Some("vanishing face coefficients".into())));
    }
    let shift: Vec<i64> = (0..n).map(|i| terms.iter().map(|(a, _)| a[i]).min().unwrap()).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        let euler: Vec<(Vec<i64>, Q)> = terms.iter().map(|(a, c)| (a.clone(), c * q(a[i]))).collect();
        let g = shifted(&euler, &shift);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    if include_face_polynomial {
        gens.push(shifted(terms, &shift));
    }
    let order = MonomialOrder::grevlex(n);
    let sat = saturate(&IdealBasis::new(n, gens, order), &variable_product(n))?;
    if sat.is_unit() {
        Ok((true, None))
    } else {
        Ok((false, Some("critical point on the torus".into())))
    }
}

pub fn nondegeneracy_check(config: &PointConfiguration, gamma: &[Q]) -> Result<NondegReport, NondegError> {
    if gamma.len() != config.len() {
        return Err(NondegError::CoefficientCount { expected: config.len(), found: gamma.len() });
    }
    let lattice = faces(config)?;
    let mut out = Vec::new();
    for face in lattice.without_zero() {
        let terms = face_terms(config, gamma, &face.index_set);
        // A face missing the origin is never the whole polytope, which contains
        // it; the non-proper branch is kept for completeness.
        let (ok, reason) = face_is_nondegenerate(&terms, config.rank(), !face.proper)?;
        out.push(FaceVerdict {
            index_set: face.index_set.clone(),
            dimension: face.dimension,
            proper: face.proper,
            nondegenerate: ok,
            reason,
        });
    }
    let nondegenerate = out.iter().all(|f| f.nondegenerate);
    Ok(NondegReport { faces: out, nondegenerate })
}
