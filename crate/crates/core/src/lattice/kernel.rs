use super::PointConfiguration;
use crate::intmat;
use serde::Serialize;

/// The exact sequence `0 -> L_A -> Z^m -> Z^n -> 0` with a dual splitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeSequence {
    /// Rows span `L_A = {p : sum p_j a_j = 0}`, in Hermite normal form.
    pub kernel_basis: Vec<Vec<i64>>,
    /// The `m x n` matrix with rows `a_j`.
    pub surjection: Vec<Vec<i64>>,
    /// `m x d` matrix `G` with `kernel_basis * G = I_d`: a section of the
    /// restriction map from `(Z^m)^*` onto `L_A^*`.
    pub splitting: Vec<Vec<i64>>,
}

impl LatticeSequence {
    pub fn rank(&self) -> usize {
        self.kernel_basis.len()
    }
}

pub fn kernel_lattice(config: &PointConfiguration) -> LatticeSequence {
    let m = config.len();
    let n = config.rank();
    let a = intmat::from_i64(config.points());
    let snf = intmat::smith(&a, n);
    // p^T A = 0 exactly when p^T lies in the span of rows rank..m of U.
    let raw: intmat::IMat = snf.u[snf.rank..].to_vec();
    let kernel = intmat::hnf_rows(&raw, m);
    let d = kernel.len();
    let splitting = if d == 0 {
        vec![Vec::new(); m]
    } else {
        let ks = intmat::smith(&kernel, m);
        debug_assert!(ks.diag.iter().all(|&x| x == 1), "kernel lattice is saturated");
        let v_head: intmat::IMat = ks.v.iter().map(|row| row[..d].to_vec()).collect();
        intmat::mul(&v_head, &ks.u)
    };
    LatticeSequence {
        kernel_basis: intmat::to_i64(&kernel),
        surjection: config.points().to_vec(),
        splitting: intmat::to_i64(&splitting),
    }
}
