//! Stanley–Reisner presentation of the cohomology of a smooth complete toric variety.

use super::CohomError;
use crate::fan::Fan;
use crate::linalg::QMatrix;
use crate::poly::{groebner_basis, normal_form, GroebnerLimits, Mono, MonomialOrder, Polynomial};
use crate::rational::{fmt_q, Q};
use itertools::Itertools;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Largest ray count accepted; minimal non-faces are found by subset enumeration.
pub const MAX_RAYS: usize = 20;

/// `H*(X, Q)` with a basis of standard monomials in the divisor classes `D_i`.
/// Degrees are complex degrees, so `D_i` has degree 1.
#[derive(Debug, Clone)]
pub struct CohomRing {
    pub fan: Fan,
    pub dim: usize,
    pub order: MonomialOrder,
    pub relations: Vec<Polynomial>,
    pub basis: Vec<Mono>,
    index: BTreeMap<Mono, usize>,
    point_class: Q,
}

pub fn cohomology_ring(fan: &Fan) -> Result<CohomRing, CohomError> {
    fan.validate()?;
    let m = fan.num_rays();
    if m > MAX_RAYS {
        return Err(CohomError::TooManyRays { rays: m, max: MAX_RAYS });
    }
    let n = fan.dim();
    let mut gens = Vec::new();
    // Minimal non-faces, by increasing size.
    let mut nonfaces: Vec<Vec<usize>> = Vec::new();
    for size in 2..=m {
        for s in (0..m).combinations(size) {
            if nonfaces.iter().any(|nf| nf.iter().all(|i| s.contains(i))) || fan.is_face(&s) {
                continue;
            }
            let mut e = vec![0u32; m];
            for &i in &s {
                e[i] = 1;
            }
            gens.push(Polynomial::monomial(m, e, Q::one()));
            nonfaces.push(s);
        }
    }
    for k in 0..n {
        let mut p = Polynomial::zero(m);
        for (i, ray) in fan.rays.iter().enumerate() {
            let mut e = vec![0u32; m];
            e[i] = 1;
            p.add_term(e, Q::from_integer(ray[k].into()));
        }
        gens.push(p);
    }
    let order = MonomialOrder::grevlex(m);
    let relations = groebner_basis(&gens, &order, GroebnerLimits::default())?;
    let leads: Vec<Mono> = relations.iter().filter_map(|g| g.leading(&order).map(|(e, _)| e.clone())).collect();
    let mut basis = Vec::new();
    for d in 0..=n as u32 {
        let mut layer: Vec<Mono> = monomials_of_degree(m, d)
            .into_iter()
            .filter(|e| !leads.iter().any(|l| l.iter().zip(e).all(|(a, b)| a <= b)))
            .collect();
        layer.sort_by(|a, b| order.cmp(a, b));
        basis.extend(layer);
    }
    let index = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut ring = CohomRing { fan: fan.clone(), dim: n, order, relations, basis, index, point_class: Q::zero() };
    let top: Vec<usize> = (0..ring.basis.len()).filter(|&i| ring.degree(i) == n).collect();
    if top.len() != 1 || ring.degree(0) != 0 {
        return Err(CohomError::NotPoincare { top_dim: top.len() });
    }
    // Every maximal cone's divisor product must be the same multiple of the top monomial.
    let mut value: Option<Q> = None;
    for (ci, cone) in fan.cones.iter().enumerate() {
        let mut e = vec![0u32; m];
        for &i in cone {
            e[i] += 1;
        }
        let c = ring.coords_of(&Polynomial::monomial(m, e, Q::one()))[top[0]].clone();
        match &value {
            None if c.is_zero() => return Err(CohomError::InconsistentIntegration { cone: ci }),
            None => value = Some(c),
            Some(v) if *v != c => return Err(CohomError::InconsistentIntegration { cone: ci }),
            Some(_) => {}
        }
    }
    ring.point_class = Q::one() / value.expect("fan has a maximal cone");
    if ring.pairing_matrix().det().is_zero() {
        return Err(CohomError::Degenerate);
    }
    Ok(ring)
}

fn monomials_of_degree(m: usize, d: u32) -> Vec<Mono> {
    (0..m)
        .combinations_with_replacement(d as usize)
        .map(|c| {
            let mut e = vec![0u32; m];
            for i in c {
                e[i] += 1;
            }
            e
        })
        .collect()
}

impl CohomRing {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.fan.num_rays()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].iter().sum::<u32>() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.degree(i)).collect()
    }

    /// Graded dimensions `dim H^{2k}` for `k = 0..=n`.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.dim + 1];
        for i in 0..self.rank() {
            b[self.degree(i)] += 1;
        }
        b
    }

    pub fn one(&self) -> Vec<Q> {
        crate::linalg::unit_vector(self.rank(), 0)
    }

    pub fn divisor(&self, i: usize) -> Vec<Q> {
        self.coords_of(&Polynomial::var(self.nvars(), i))
    }

    /// Coordinates of the class of an arbitrary polynomial in the divisors.
    pub fn coords_of(&self, p: &Polynomial) -> Vec<Q> {
        let nf = normal_form(p, &self.relations, &self.order);
        let mut v = vec![Q::zero(); self.rank()];
        for (e, c) in nf.terms() {
            v[self.index[e]] += c;
        }
        v
    }

    pub fn to_poly(&self, x: &[Q]) -> Polynomial {
        Polynomial::from_terms(self.nvars(), self.basis.iter().cloned().zip(x.iter().cloned()))
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.coords_of(&(&self.to_poly(a) * &self.to_poly(b)))
    }

    /// Matrix of multiplication by `a`.
    pub fn mul_matrix(&self, a: &[Q]) -> QMatrix {
        let cols: Vec<Vec<Q>> =
            (0..self.rank()).map(|j| self.mul(a, &crate::linalg::unit_vector(self.rank(), j))).collect();
        QMatrix::from_cols(&cols, self.rank())
    }

    /// Integration over `X`, normalized so a maximal cone's divisor product gives 1.
    pub fn integrate(&self, x: &[Q]) -> Q {
        let top = self.rank() - 1;
        &x[top] * &self.point_class
    }

    pub fn pairing_matrix(&self) -> QMatrix {
        let r = self.rank();
        let mut g = QMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                let e = |k| crate::linalg::unit_vector(r, k);
                g[(i, j)] = self.integrate(&self.mul(&e(i), &e(j)));
            }
        }
        g
    }

    pub fn element_display(&self, x: &[Q]) -> String {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("D{i}")).collect();
        let p = self.to_poly(x);
        if p.is_zero() {
            return "0".into();
        }
        p.display_with(&names)
    }

    pub fn basis_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            out.push(self.element_display(&crate::linalg::unit_vector(self.rank(), i)));
        }
        out
    }
}

/// Human-readable form of a coefficient vector, for reports.
pub fn coords_display(x: &[Q]) -> String {
    format!("[{}]", x.iter().map(fmt_q).join(", "))
}
