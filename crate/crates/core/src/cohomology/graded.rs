//! Weight filtration of `N` on `H*(Y)` and the induced structures on `Cok N`
//! and `Ker N`, with the pairings `(a, N^k b)_Y` on primitive parts.

use super::bundle::BundleCohomology;
use super::CohomError;
use crate::linalg::{column_space, subspace_intersection, subspace_sum, QMatrix};
use crate::rational::Q;
use crate::tep::{primitive_decomposition, weight_filtration, PrimitiveDecomposition, WeightFiltration};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Symmetry of a Gram matrix `G` against its transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GramSymmetry {
    Symmetric,
    Skew,
    Neither,
}

impl GramSymmetry {
    pub fn of(g: &QMatrix) -> Self {
        let t = g.transpose();
        if *g == t {
            GramSymmetry::Symmetric
        } else if g.add(&t).is_zero() {
            GramSymmetry::Skew
        } else {
            GramSymmetry::Neither
        }
    }

    pub fn sign(self) -> Option<i64> {
        match self {
            GramSymmetry::Symmetric => Some(1),
            GramSymmetry::Skew => Some(-1),
            GramSymmetry::Neither => None,
        }
    }
}

/// One graded pairing: `representatives` span the piece and `gram[i][j]` pairs them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPairing {
    /// Degree of the piece in the `W̃` grading.
    pub degree: i64,
    /// `k` with the piece coming from `PGr_k`.
    pub k: usize,
    pub representatives: Vec<Vec<Q>>,
    pub gram: QMatrix,
    pub det: Q,
    pub symmetry: GramSymmetry,
}

#[derive(Debug, Clone)]
pub struct GradedStructure {
    pub weight: WeightFiltration,
    pub primitive: PrimitiveDecomposition,
    /// `n + r`.
    pub shift: i64,
    pub cok_graded_dims: BTreeMap<i64, usize>,
    pub ker_graded_dims: BTreeMap<i64, usize>,
    pub cok_pairings: Vec<GradedPairing>,
    pub ker_pairings: Vec<GradedPairing>,
}

impl GradedStructure {
    pub fn all_nondegenerate(&self) -> bool {
        self.cok_pairings.iter().chain(&self.ker_pairings).all(|p| !p.det.is_zero())
    }
}

fn gram_of(bc: &BundleCohomology, left: &[Vec<Q>], right: &[Vec<Q>]) -> QMatrix {
    let mut g = QMatrix::zeros(left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            g[(i, j)] = bc.pairing(a, b);
        }
    }
    g
}

pub fn graded_structure(bc: &BundleCohomology) -> Result<GradedStructure, CohomError> {
    let weight = weight_filtration(&bc.n)?;
    let primitive = primitive_decomposition(&weight);
    let shift = bc.dim_y() as i64;
    let dim = bc.rank();
    let image = column_space(&bc.n);
    let kernel = bc.kernel_of_n();
    let top = weight.max_weight();
    let mut cok_dims = BTreeMap::new();
    let mut ker_dims = BTreeMap::new();
    let (mut prev_cok, mut prev_ker) = (0usize, 0usize);
    for m in -top - 1..=top {
        let step = weight.step(m);
        // W̃_{m-shift} on Cok is the image of W_m; on Ker it is the intersection.
        let c = subspace_sum(&step, &image, dim).len() - image.len();
        let k = subspace_intersection(&step, &kernel, dim).len();
        if c > prev_cok {
            cok_dims.insert(m - shift, c - prev_cok);
        }
        if k > prev_ker {
            ker_dims.insert(m - shift, k - prev_ker);
        }
        prev_cok = c;
        prev_ker = k;
    }
    let mut cok_pairings = Vec::new();
    let mut ker_pairings = Vec::new();
    for (&k, tops) in primitive.primitive.iter().rev() {
        let nk = bc.n.pow(k);
        let right: Vec<Vec<Q>> = tops.iter().map(|b| nk.mul_vec(b)).collect();
        let gram = gram_of(bc, tops, &right);
        let det = gram.det();
        let symmetry = GramSymmetry::of(&gram);
        cok_pairings.push(GradedPairing {
            degree: k as i64 - shift,
            k,
            representatives: tops.clone(),
            gram: gram.clone(),
            det: det.clone(),
            symmetry,
        });
        // On Ker the piece is spanned by N^k of the same tops; the pairing is
        // transported back to the tops, so the Gram matrix is the same.
        ker_pairings.push(GradedPairing {
            degree: -(k as i64) - shift,
            k,
            representatives: primitive.dual_primitive[&k].clone(),
            gram,
            det,
            symmetry,
        });
    }
    ker_pairings.reverse();
    Ok(GradedStructure {
        weight,
        primitive,
        shift,
        cok_graded_dims: cok_dims,
        ker_graded_dims: ker_dims,
        cok_pairings,
        ker_pairings,
    })
}
