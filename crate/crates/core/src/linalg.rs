//! Dense matrices over Q and subspace arithmetic.
//!
//! Vectors are plain `Vec<Q>`; subspaces are represented by a list of
//! spanning vectors, normalized on demand to a reduced row-echelon basis.

use crate::rational::{fmt_q, q, Q};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Q>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(&conv)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &self[(i, j)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn pow(&self, e: usize) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    /// Restricts a bilinear form to the span of `basis`: entries `b_i^T self b_j`.
    pub fn gram(&self, left: &[Vec<Q>], right: &[Vec<Q>]) -> QMatrix {
        let mut g = QMatrix::zeros(left.len(), right.len());
        for (j, b) in right.iter().enumerate() {
            let mb = self.mul_vec(b);
            for (i, a) in left.iter().enumerate() {
                g[(i, j)] = dot(a, &mb);
            }
        }
        g
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_q(&self[(i, j)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn vec_is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Canonical reduced row-echelon basis of the span of `vs` in `Q^dim`.
pub fn span_basis(vs: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(vs);
    debug_assert_eq!(m.ncols(), dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

pub fn span_dim(vs: &[Vec<Q>]) -> usize {
    if vs.is_empty() {
        0
    } else {
        QMatrix::from_rows(vs).rank()
    }
}

pub fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    if vec_is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let r0 = span_dim(&rows);
    rows.push(v.to_vec());
    span_dim(&rows) == r0
}

pub fn subspace_contains(big: &[Vec<Q>], small: &[Vec<Q>]) -> bool {
    let r0 = span_dim(big);
    let mut rows = big.to_vec();
    rows.extend(small.iter().cloned());
    span_dim(&rows) == r0
}

pub fn subspace_eq(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    span_dim(a) == span_dim(b) && subspace_contains(a, b)
}

pub fn subspace_sum(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut rows = a.to_vec();
    rows.extend(b.iter().cloned());
    span_basis(&rows, dim)
}

pub fn subspace_intersection(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let a = span_basis(a, dim);
    let b = span_basis(b, dim);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i - sum y_j b_j = 0.
    let mut cols: Vec<Vec<Q>> = a.clone();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
    let m = QMatrix::from_cols(&cols, dim);
    let vs: Vec<Vec<Q>> = m
        .nullspace()
        .into_iter()
        .map(|coef| {
            let mut v = vec![Q::zero(); dim];
            for (i, c) in coef.iter().take(a.len()).enumerate() {
                if !c.is_zero() {
                    v = vec_add(&v, &vec_scale(&a[i], c));
                }
            }
            v
        })
        .collect();
    span_basis(&vs, dim)
}

/// Image of a subspace under a linear map.
pub fn image_of(m: &QMatrix, basis: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let vs: Vec<Vec<Q>> = basis.iter().map(|v| m.mul_vec(v)).collect();
    span_basis(&vs, m.nrows())
}

/// Column space of a matrix.
pub fn column_space(m: &QMatrix) -> Vec<Vec<Q>> {
    let cols: Vec<Vec<Q>> = (0..m.ncols()).map(|j| m.col(j)).collect();
    span_basis(&cols, m.nrows())
}

/// Greedily picks vectors from `candidates` that extend `base` while staying independent.
pub fn extend_basis(base: &[Vec<Q>], candidates: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut current = base.to_vec();
    let mut rank = span_dim(&current);
    let mut picked = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let r = span_dim(&current);
        if r > rank {
            rank = r;
            picked.push(c.clone());
        } else {
            current.pop();
        }
    }
    picked
}

/// Preimage `{v in domain : m v in target}` intersected with `domain`.
pub fn preimage_within(m: &QMatrix, domain: &[Vec<Q>], target: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let dim = m.ncols();
    let domain = span_basis(domain, dim);
    if domain.is_empty() {
        return Vec::new();
    }
    let tgt = span_basis(target, m.nrows());
    // Solve m (sum x_i d_i) - sum y_j t_j = 0.
    let mut cols: Vec<Vec<Q>> = domain.iter().map(|d| m.mul_vec(d)).collect();
    cols.extend(tgt.iter().map(|v| v.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
    let sys = QMatrix::from_cols(&cols, m.nrows());
    let vs: Vec<Vec<Q>> = sys
        .nullspace()
        .into_iter()
        .map(|coef| {
            let mut v = vec![Q::zero(); dim];
            for (i, c) in coef.iter().take(domain.len()).enumerate() {
                if !c.is_zero() {
                    v = vec_add(&v, &vec_scale(&domain[i], c));
                }
            }
            v
        })
        .collect();
    span_basis(&vs, dim)
}

/// Coordinates of `v` in terms of an independent family `basis`.
pub fn coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    if basis.is_empty() {
        return if vec_is_zero(v) { Some(Vec::new()) } else { None };
    }
    QMatrix::from_cols(basis, v.len()).solve(v)
}
