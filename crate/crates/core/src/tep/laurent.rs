//! Laurent polynomials in `λ` and matrices over them.

use crate::linalg::QMatrix;
use crate::rational::{fmt_q, q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: i64, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Multiplication by `λ^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(i, c)| (i + k, c.clone())).collect() }
    }

    /// Substitution `λ ↦ -λ`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, if k % 2 == 0 { c.clone() } else { -c.clone() })).collect(),
        }
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().map(|(k, c)| c * crate::rational::pow_q(x, *k)).fold(Q::zero(), |a, b| a + b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let neg = *c < Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = match (*k, mag.is_one()) {
                (0, _) => fmt_q(&mag),
                (1, true) => "l".to_string(),
                (1, false) => format!("{}*l", fmt_q(&mag)),
                (k, true) => format!("l^{k}"),
                (k, false) => format!("{}*l^{k}", fmt_q(&mag)),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Serialized as a map from λ-exponent to rational string.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self.coeffs.iter().map(|(k, c)| (k.to_string(), fmt_q(c))).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let m = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (k, c) in m {
            let k: i64 = k.trim().parse().map_err(D::Error::custom)?;
            p.add_term(k, crate::rational::parse_q(&c).map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

/// Dense matrix with Laurent polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl LMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LMatrix { rows, cols, entries: vec![vec![LaurentPoly::zero(); cols]; rows] }
    }

    pub fn from_entries(entries: Vec<Vec<LaurentPoly>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == cols), "ragged Laurent matrix");
        LMatrix { rows, cols, entries }
    }

    /// `λ^k Q` for a constant matrix `Q`.
    pub fn from_q(m: &QMatrix, k: i64) -> Self {
        let entries =
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| LaurentPoly::monomial(k, m[(i, j)].clone())).collect()).collect();
        LMatrix { rows: m.nrows(), cols: m.ncols(), entries }
    }

    /// `Σ_k λ^k C_k`.
    pub fn from_coefficients(parts: &[(i64, QMatrix)]) -> Self {
        let (r, c) = parts.first().map_or((0, 0), |p| (p.1.nrows(), p.1.ncols()));
        let mut out = Self::zeros(r, c);
        for (k, m) in parts {
            out = out.add(&Self::from_q(m, *k));
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i][j] = p;
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols).map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect()).collect();
        LMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect()).collect();
        LMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.entries[i][k].mul(&o.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn mul_q(&self, m: &QMatrix) -> Self {
        self.mul(&Self::from_q(m, 0))
    }

    pub fn q_mul(m: &QMatrix, o: &Self) -> Self {
        Self::from_q(m, 0).mul(o)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|p| p.mul(c))
    }

    pub fn reflect(&self) -> Self {
        self.map(LaurentPoly::reflect)
    }

    pub fn shift(&self, k: i64) -> Self {
        self.map(|p| p.shift(k))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    /// Coefficient matrix of `λ^k`.
    pub fn coefficient(&self, k: i64) -> QMatrix {
        let rows: Vec<Vec<Q>> = self.entries.iter().map(|r| r.iter().map(|p| p.coeff(k)).collect()).collect();
        if rows.is_empty() {
            return QMatrix::zeros(0, self.cols);
        }
        QMatrix::from_rows(&rows)
    }

    pub fn eval(&self, x: &Q) -> QMatrix {
        let rows: Vec<Vec<Q>> = self.entries.iter().map(|r| r.iter().map(|p| p.eval(x)).collect()).collect();
        if rows.is_empty() {
            return QMatrix::zeros(0, self.cols);
        }
        QMatrix::from_rows(&rows)
    }

    /// Exact determinant, by clearing row denominators, evaluating at enough
    /// integer points and interpolating.
    pub fn det(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return LaurentPoly::constant(Q::one());
        }
        let mut total_shift = 0i64;
        let mut degree_bound = 0i64;
        let mut cleared = self.clone();
        for i in 0..self.rows {
            let lo = self.entries[i].iter().filter_map(LaurentPoly::min_degree).min();
            let hi = self.entries[i].iter().filter_map(LaurentPoly::max_degree).max();
            let (Some(lo), Some(hi)) = (lo, hi) else { return LaurentPoly::zero() };
            total_shift += lo;
            degree_bound += hi - lo;
            for p in cleared.entries[i].iter_mut() {
                *p = p.shift(-lo);
            }
        }
        let xs: Vec<Q> = (0..=degree_bound).map(|t| q(t + 1)).collect();
        let ys: Vec<Q> = xs.iter().map(|x| cleared.eval(x).det()).collect();
        interpolate(&xs, &ys).shift(total_shift)
    }
}

/// Lagrange interpolation through `(xs, ys)`; distinct nodes.
fn interpolate(xs: &[Q], ys: &[Q]) -> LaurentPoly {
    let mut out = vec![Q::zero(); xs.len()];
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let factor = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &factor;
        }
    }
    let mut p = LaurentPoly::zero();
    for (k, c) in out.into_iter().enumerate() {
        p.add_term(k as i64, c);
    }
    p
}
