//! Cohomology of `Y = P(E ⊕ O)` over `H*(X)`, the operator `N = γ∪` and `i₀*`.

use super::ring::CohomRing;
use super::CohomError;
use crate::linalg::{span_basis, subspace_eq, unit_vector, vec_add, vec_scale, QMatrix};
use crate::rational::Q;
use num_traits::{One, Zero};

/// `c_0..c_r` of `E^∨` for `E = ⊕_j O(Σ_i β_{ji} D_i)`: the elementary symmetric
/// functions of the `-c_1(L_j)`. `beta` has one row per line bundle.
pub fn chern_classes(ring: &CohomRing, beta: &[Vec<i64>]) -> Result<Vec<Vec<Q>>, CohomError> {
    let m = ring.nvars();
    let mut roots = Vec::new();
    for (j, row) in beta.iter().enumerate() {
        if row.len() != m {
            return Err(CohomError::BetaShape { row: j, expected: m, found: row.len() });
        }
        let mut c1 = vec![Q::zero(); ring.rank()];
        for (i, &b) in row.iter().enumerate() {
            c1 = vec_add(&c1, &vec_scale(&ring.divisor(i), &Q::from_integer((-b).into())));
        }
        roots.push(c1);
    }
    // Expand prod_j (1 + x_j) degree by degree.
    let mut c = vec![ring.one()];
    for x in &roots {
        let mut next = c.clone();
        next.push(vec![Q::zero(); ring.rank()]);
        for k in 1..next.len() {
            next[k] = vec_add(&next[k], &ring.mul(&c[k - 1], x));
        }
        c = next;
    }
    Ok(c)
}

/// `H*(Y) = ⊕_{j=0}^r γ^j π*H*(X)`, stored with basis `γ^j e_i` at index `j * d + i`.
#[derive(Debug, Clone)]
pub struct BundleCohomology {
    pub base: CohomRing,
    pub r: usize,
    pub chern: Vec<Vec<Q>>,
    /// Matrix of `γ∪` in the basis above.
    pub n: QMatrix,
    n_powers: Vec<QMatrix>,
}

pub fn bundle_cohomology(base: &CohomRing, chern: &[Vec<Q>]) -> Result<BundleCohomology, CohomError> {
    if chern.is_empty() || chern[0] != base.one() || chern.iter().any(|c| c.len() != base.rank()) {
        return Err(CohomError::ChernSequence);
    }
    let r = chern.len() - 1;
    let d = base.rank();
    let dim = (r + 1) * d;
    let mut n = QMatrix::zeros(dim, dim);
    for j in 0..=r {
        for i in 0..d {
            let col = j * d + i;
            if j < r {
                n[((j + 1) * d + i, col)] = Q::one();
                continue;
            }
            // γ^{r+1} = -Σ_{k=1}^r γ^{r+1-k} c_k.
            let e = unit_vector(d, i);
            for (k, ck) in chern.iter().enumerate().skip(1) {
                let prod = base.mul(ck, &e);
                let block = r + 1 - k;
                for (t, x) in prod.iter().enumerate() {
                    n[(block * d + t, col)] -= x;
                }
            }
        }
    }
    let mut n_powers = vec![QMatrix::identity(dim)];
    for _ in 0..2 * r + 1 {
        let next = n_powers.last().unwrap().mul(&n);
        n_powers.push(next);
    }
    Ok(BundleCohomology { base: base.clone(), r, chern: chern.to_vec(), n, n_powers })
}

impl BundleCohomology {
    pub fn rank(&self) -> usize {
        (self.r + 1) * self.base.rank()
    }

    /// Complex dimension of `Y`.
    pub fn dim_y(&self) -> usize {
        self.base.dim + self.r
    }

    pub fn degree(&self, idx: usize) -> usize {
        let d = self.base.rank();
        idx / d + self.base.degree(idx % d)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.degree(i)).collect()
    }

    /// `γ^j π*σ`.
    pub fn embed(&self, j: usize, sigma: &[Q]) -> Vec<Q> {
        let d = self.base.rank();
        let mut v = vec![Q::zero(); self.rank()];
        v[j * d..(j + 1) * d].clone_from_slice(sigma);
        v
    }

    pub fn pi_star(&self, sigma: &[Q]) -> Vec<Q> {
        self.embed(0, sigma)
    }

    fn block(&self, x: &[Q], j: usize) -> Vec<Q> {
        let d = self.base.rank();
        x[j * d..(j + 1) * d].to_vec()
    }

    /// Pushes `γ^k π*σ` for any `k <= 2r` back into the basis.
    fn gamma_power_times(&self, k: usize, sigma: &[Q]) -> Vec<Q> {
        self.n_powers[k].mul_vec(&self.pi_star(sigma))
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank()];
        for j in 0..=self.r {
            let xj = self.block(x, j);
            if xj.iter().all(Zero::is_zero) {
                continue;
            }
            for k in 0..=self.r {
                let yk = self.block(y, k);
                if yk.iter().all(Zero::is_zero) {
                    continue;
                }
                out = vec_add(&out, &self.gamma_power_times(j + k, &self.base.mul(&xj, &yk)));
            }
        }
        out
    }

    pub fn mul_matrix(&self, a: &[Q]) -> QMatrix {
        let cols: Vec<Vec<Q>> = (0..self.rank()).map(|j| self.mul(a, &unit_vector(self.rank(), j))).collect();
        QMatrix::from_cols(&cols, self.rank())
    }

    /// `∫_Y γ^r π*σ = ∫_X σ`; lower powers of `γ` integrate to zero for degree reasons.
    pub fn integrate(&self, x: &[Q]) -> Q {
        self.base.integrate(&self.block(x, self.r))
    }

    pub fn pairing(&self, a: &[Q], b: &[Q]) -> Q {
        self.integrate(&self.mul(a, b))
    }

    pub fn pairing_matrix(&self) -> QMatrix {
        let d = self.rank();
        let mut g = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                g[(i, j)] = self.pairing(&unit_vector(d, i), &unit_vector(d, j));
            }
        }
        g
    }

    /// `Σ_{j=0}^r γ^{r-j} c_j`, the class of the zero section.
    pub fn zero_section_class(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank()];
        for (j, c) in self.chern.iter().enumerate() {
            out = vec_add(&out, &self.embed(self.r - j, c));
        }
        out
    }

    /// `i₀*σ = π*σ · Σ γ^{r-j} c_j`.
    pub fn i0_star(&self, sigma: &[Q]) -> Vec<Q> {
        self.mul(&self.pi_star(sigma), &self.zero_section_class())
    }

    pub fn image_of_i0(&self) -> Vec<Vec<Q>> {
        let d = self.base.rank();
        let v: Vec<Vec<Q>> = (0..d).map(|i| self.i0_star(&unit_vector(d, i))).collect();
        span_basis(&v, self.rank())
    }

    pub fn kernel_of_n(&self) -> Vec<Vec<Q>> {
        self.n.nullspace()
    }

    /// `γ · Σ γ^{r-j} c_j`, which must vanish.
    pub fn relation_residual(&self) -> Vec<Q> {
        self.mul(&self.gamma(), &self.zero_section_class())
    }

    /// The tautological class `γ`; zero when `r = 0`.
    pub fn gamma(&self) -> Vec<Q> {
        if self.r == 0 {
            // Y = X and γ restricts to zero.
            vec![Q::zero(); self.rank()]
        } else {
            self.embed(1, &self.base.one())
        }
    }

    pub fn kernel_matches_i0_image(&self) -> bool {
        subspace_eq(&self.kernel_of_n(), &self.image_of_i0())
    }

    pub fn basis_names(&self) -> Vec<String> {
        let names = self.base.basis_names();
        let mut out = Vec::new();
        for j in 0..=self.r {
            for s in &names {
                out.push(match (j, s.as_str()) {
                    (0, _) => s.clone(),
                    (1, "1") => "g".into(),
                    (_, "1") => format!("g^{j}"),
                    (1, _) => format!("g*{s}"),
                    _ => format!("g^{j}*{s}"),
                });
            }
        }
        out
    }
}
