//! Truncated Laurent series in `x_1..x_m` and the normalized Γ-series.

use super::GkzError;
use crate::lattice::{kernel_lattice, PointConfiguration};
use crate::rational::{falling_int, fmt_q, pow_q, Q};
use crate::weyl::OperatorElement;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Finite sum `Σ c_w x^w` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    m: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl LaurentSeries {
    pub fn zero(m: usize) -> Self {
        LaurentSeries { m, terms: BTreeMap::new() }
    }

    pub fn monomial(exp: Vec<i64>, c: Q) -> Self {
        let mut s = Self::zero(exp.len());
        s.add_term(exp, c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: Q) {
        assert_eq!(exp.len(), self.m, "series variable count mismatch");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.m);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            if e[j] != 0 {
                let mut f = e.clone();
                f[j] -= 1;
                out.add_term(f, c * Q::from_integer(e[j].into()));
            }
        }
        out
    }

    /// `∏ ∂_j^{b_j}` applied termwise.
    pub fn derivatives(&self, b: &[u64]) -> Self {
        let mut out = Self::zero(self.m);
        'terms: for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut f = e.clone();
            for (j, &k) in b.iter().enumerate() {
                let fall = falling_int(e[j], k);
                if fall.is_zero() {
                    continue 'terms;
                }
                coef *= Q::from_integer(fall);
                f[j] -= k as i64;
            }
            out.add_term(f, coef);
        }
        out
    }

    /// Applies an operator free of `λ` and `∂_λ`.
    pub fn apply(&self, op: &OperatorElement) -> Result<Self, GkzError> {
        if op.nvars() != self.m {
            return Err(GkzError::Length { expected: self.m, found: op.nvars() });
        }
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            let image = op.apply_to_monomial(e).ok_or(GkzError::LambdaOperator)?;
            for (k, f) in image {
                out.add_term(f, c * k);
            }
        }
        Ok(out)
    }

    /// Exact value at a rational point; a negative power of a zero coordinate is a pole.
    pub fn eval(&self, point: &[Q]) -> Result<Q, GkzError> {
        if point.len() != self.m {
            return Err(GkzError::Length { expected: self.m, found: point.len() });
        }
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if x.is_zero() && k < 0 {
                    return Err(GkzError::Pole { exponent: e.clone() });
                }
                t *= pow_q(x, k);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(j, &k)| if k == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, k) })
                    .collect();
                if mono.is_empty() {
                    fmt_q(c)
                } else {
                    format!("({})*{}", fmt_q(c), mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Serialize, Deserialize)]
struct RawSeriesTerm {
    exp: Vec<i64>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    vars: usize,
    terms: Vec<RawSeriesTerm>,
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSeries {
            vars: self.m,
            terms: self.terms.iter().map(|(e, c)| RawSeriesTerm { exp: e.clone(), coef: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawSeries::deserialize(d)?;
        let mut out = LaurentSeries::zero(raw.vars);
        for t in raw.terms {
            if t.exp.len() != raw.vars {
                return Err(D::Error::custom("series term has the wrong number of exponents"));
            }
            out.add_term(t.exp, crate::rational::parse_q(&t.coef).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

/// A truncated Γ-series `Σ_{u} c_u x^{v+u}` over kernel lattice points `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSolution {
    pub base: Vec<i64>,
    pub gamma: Vec<i64>,
    /// Kernel coefficients `k` with `|k_i| <= radius` were scanned.
    pub radius: u32,
    pub kernel_basis: Vec<Vec<i64>>,
    pub series: LaurentSeries,
}

impl SeriesSolution {
    /// Rescales the coefficients, keeping the truncation data.
    pub fn scaled(&self, c: &Q) -> Self {
        SeriesSolution { series: self.series.scale(c), ..self.clone() }
    }
}

fn negative_support(v: &[i64]) -> Vec<bool> {
    v.iter().map(|&x| x < 0).collect()
}

/// Coefficient `[v]_{u-} / [v+u]_{u+}` of `x^{v+u}`, where `[a]_b = ∏_j a_j (a_j - 1) ... (a_j - b_j + 1)`
/// over the indicated signs of `u`.
fn normalized_coefficient(v: &[i64], u: &[i64]) -> Q {
    let mut num = num_bigint::BigInt::one();
    let mut den = num_bigint::BigInt::one();
    for (&vj, &uj) in v.iter().zip(u) {
        if uj < 0 {
            num *= falling_int(vj, (-uj) as u64);
        } else if uj > 0 {
            den *= falling_int(vj + uj, uj as u64);
        }
    }
    Q::new(num, den)
}

/// Normalized Γ-series with base exponent `v` (integral, `Σ v_j a_j = γ`), summed over
/// `u ∈ L_A` whose negative support agrees with that of `v`.
pub fn gamma_series(config: &PointConfiguration, gamma: &[i64], v: &[i64], radius: u32) -> Result<SeriesSolution, GkzError> {
    let m = config.len();
    if v.len() != m {
        return Err(GkzError::Length { expected: m, found: v.len() });
    }
    if gamma.len() != config.rank() {
        return Err(GkzError::Length { expected: config.rank(), found: gamma.len() });
    }
    if config.combine(v) != gamma {
        return Err(GkzError::BaseExponent { v: v.to_vec(), gamma: gamma.to_vec() });
    }
    let kernel = kernel_lattice(config).kernel_basis;
    let nsupp = negative_support(v);
    let mut series = LaurentSeries::zero(m);
    let r = radius as i64;
    let d = kernel.len();
    let mut k = vec![-r; d];
    loop {
        let mut u = vec![0i64; m];
        for (ki, row) in k.iter().zip(&kernel) {
            for (uj, lj) in u.iter_mut().zip(row) {
                *uj += ki * lj;
            }
        }
        let w: Vec<i64> = v.iter().zip(&u).map(|(a, b)| a + b).collect();
        if negative_support(&w) == nsupp {
            series.add_term(w, normalized_coefficient(v, &u));
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(SeriesSolution { base: v.to_vec(), gamma: gamma.to_vec(), radius, kernel_basis: kernel, series });
            }
            i -= 1;
            if k[i] < r {
                k[i] += 1;
                for t in k[i + 1..].iter_mut() {
                    *t = -r;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, q, qr};

    fn gauss() -> PointConfiguration {
        PointConfiguration::new(2, vec![vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn gauss_at_zero_is_constant() {
        let s = gamma_series(&gauss(), &[0, 0], &[0, 0, 0], 6).unwrap();
        assert_eq!(s.series, LaurentSeries::monomial(vec![0, 0, 0], q(1)));
    }

    #[test]
    fn gauss_central_binomial_series() {
        let s = gamma_series(&gauss(), &[-1, -1], &[0, -1, 0], 5).unwrap();
        assert_eq!(s.series.len(), 6);
        for k in 0..=5i64 {
            let c = s.series.terms()[&vec![k, -1 - 2 * k, k]].clone();
            assert_eq!(c, Q::from_integer(binomial(2 * k as u64, k as u64)));
        }
    }

    #[test]
    fn two_three_factorial_ratio() {
        let a = PointConfiguration::new(1, vec![vec![2], vec![3]]).unwrap();
        assert!(gamma_series(&a, &[0], &[0, 0], 4).unwrap().series.len() == 1);
        let s = gamma_series(&a, &[-1], &[1, -1], 3).unwrap();
        // (2k)! / (3k+1)!
        let expect = [q(1), qr(2, 24), qr(24, 5040), qr(720, 3628800)];
        for (k, e) in expect.iter().enumerate() {
            let k = k as i64;
            assert_eq!(&s.series.terms()[&vec![1 + 3 * k, -1 - 2 * k]], e);
        }
    }

    #[test]
    fn rejects_bad_base_exponent() {
        assert!(matches!(gamma_series(&gauss(), &[0, 0], &[1, 0, 0], 2), Err(GkzError::BaseExponent { .. })));
    }

    #[test]
    fn evaluation_and_poles() {
        let s = LaurentSeries::monomial(vec![-1, 2], q(3));
        assert_eq!(s.eval(&[qr(1, 2), q(2)]).unwrap(), q(24));
        assert!(matches!(s.eval(&[q(0), q(1)]), Err(GkzError::Pole { .. })));
        assert_eq!(s.derivative(0), LaurentSeries::monomial(vec![-2, 2], q(-3)));
        assert_eq!(s.derivatives(&[0, 3]), LaurentSeries::zero(2));
    }

    #[test]
    fn json_round_trip() {
        let s = gamma_series(&gauss(), &[-1, -1], &[0, -1, 0], 3).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: SeriesSolution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
