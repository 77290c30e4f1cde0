//! Weyl algebra in `(λ, x_1..x_m)` with normal ordering
//! `λ^a x^α ∂_λ^c ∂_x^β` (positions left of derivations).

use crate::lattice::{kernel_lattice, PointConfiguration};
use crate::rational::{falling_int, fmt_q, q, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("shift vector b has a negative entry at {index}")]
    NegativeShift { index: usize },
    #[error("c1 - c2 differs from sum b_j a_j in coordinate {coordinate}")]
    InconsistentShift { coordinate: usize },
}

/// Exponents of one normal-ordered monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OpKey {
    #[serde(rename = "l")]
    pub lam: u32,
    pub x: Vec<u32>,
    #[serde(rename = "dl")]
    pub dlam: u32,
    pub dx: Vec<u32>,
}

impl OpKey {
    fn unit(m: usize) -> Self {
        OpKey { lam: 0, x: vec![0; m], dlam: 0, dx: vec![0; m] }
    }

    /// Derivation order `c + |β|`.
    pub fn order(&self) -> u32 {
        self.dlam + self.dx.iter().sum::<u32>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorElement {
    m: usize,
    terms: BTreeMap<OpKey, Q>,
}

impl OperatorElement {
    pub fn zero(m: usize) -> Self {
        OperatorElement { m, terms: BTreeMap::new() }
    }

    pub fn scalar(m: usize, c: Q) -> Self {
        let mut e = Self::zero(m);
        e.add_term(OpKey::unit(m), c);
        e
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, Q::one())
    }

    pub fn from_key(m: usize, key: OpKey, c: Q) -> Self {
        let mut e = Self::zero(m);
        e.add_term(key, c);
        e
    }

    pub fn lambda(m: usize) -> Self {
        Self::from_key(m, OpKey { lam: 1, ..OpKey::unit(m) }, Q::one())
    }

    pub fn d_lambda(m: usize) -> Self {
        Self::from_key(m, OpKey { dlam: 1, ..OpKey::unit(m) }, Q::one())
    }

    pub fn x(m: usize, j: usize) -> Self {
        let mut k = OpKey::unit(m);
        k.x[j] = 1;
        Self::from_key(m, k, Q::one())
    }

    pub fn dx(m: usize, j: usize) -> Self {
        let mut k = OpKey::unit(m);
        k.dx[j] = 1;
        Self::from_key(m, k, Q::one())
    }

    /// `λ ∂_{x_j}`.
    pub fn lambda_dx(m: usize, j: usize) -> Self {
        let mut k = OpKey::unit(m);
        k.lam = 1;
        k.dx[j] = 1;
        Self::from_key(m, k, Q::one())
    }

    /// `λ² ∂_λ`.
    pub fn lambda_sq_d_lambda(m: usize) -> Self {
        Self::from_key(m, OpKey { lam: 2, dlam: 1, ..OpKey::unit(m) }, Q::one())
    }

    pub fn add_term(&mut self, key: OpKey, c: Q) {
        assert_eq!(key.x.len(), self.m, "operator variable count mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<OpKey, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.m);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Highest derivation order among the terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(OpKey::order).max()
    }

    /// Terms of maximal derivation order (the principal symbol, read commutatively).
    pub fn principal_symbol(&self) -> BTreeMap<OpKey, Q> {
        let Some(top) = self.order() else { return BTreeMap::new() };
        self.terms.iter().filter(|(k, _)| k.order() == top).map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    /// Membership in the subalgebra generated over `C[λ, x]` by `λ∂_{x_j}` and `λ²∂_λ`:
    /// every term satisfies `a >= |β| + 2c`.
    pub fn in_rtilde(&self) -> bool {
        self.terms.keys().all(|k| k.lam >= k.dx.iter().sum::<u32>() + 2 * k.dlam)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn mul_terms(&self, a: &OpKey, ca: &Q, b: &OpKey, cb: &Q, out: &mut Self) {
        // ∂^c t^{a'} = sum_k C(c,k) (a')_k t^{a'-k} ∂^{c-k}, one variable at a time.
        let mut partial: Vec<(OpKey, BigInt)> = vec![(
            OpKey { lam: a.lam + b.lam, x: a.x.iter().zip(&b.x).map(|(s, t)| s + t).collect(), dlam: 0, dx: vec![0; self.m] },
            BigInt::one(),
        )];
        let mut expand = |deriv: u32, power: u32, slot: usize| {
            let mut next = Vec::new();
            for (key, coef) in &partial {
                for k in 0..=deriv.min(power) {
                    let f = crate::rational::binomial(deriv as u64, k as u64) * falling_int(power as i64, k as u64);
                    let mut nk = key.clone();
                    if slot == usize::MAX {
                        nk.lam -= k;
                        nk.dlam += deriv - k;
                    } else {
                        nk.x[slot] -= k;
                        nk.dx[slot] += deriv - k;
                    }
                    next.push((nk, coef * f));
                }
            }
            partial = next;
        };
        expand(a.dlam, b.lam, usize::MAX);
        for j in 0..self.m {
            expand(a.dx[j], b.x[j], j);
        }
        let c = ca * cb;
        for (mut key, coef) in partial {
            key.dlam += b.dlam;
            for j in 0..self.m {
                key.dx[j] += b.dx[j];
            }
            out.add_term(key, &c * Q::from_integer(coef));
        }
    }

    /// Applies the operator to the Laurent monomial `x^w` (λ-free), returning
    /// `(coefficient, exponent)` pairs. Terms involving `λ` or `∂_λ` are rejected.
    pub fn apply_to_monomial(&self, w: &[i64]) -> Option<Vec<(Q, Vec<i64>)>> {
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            if k.lam > 0 || k.dlam > 0 {
                return None;
            }
            let mut coef = c.clone();
            let mut exp = w.to_vec();
            for j in 0..self.m {
                coef *= Q::from_integer(falling_int(exp[j], k.dx[j] as u64));
                exp[j] = exp[j] - k.dx[j] as i64 + k.x[j] as i64;
            }
            if !coef.is_zero() {
                out.push((coef, exp));
            }
        }
        Some(out)
    }
}

fn format_term(k: &OpKey, c: &Q) -> (bool, String) {
    let neg = *c < Q::zero();
    let mag = if neg { -c.clone() } else { c.clone() };
    let mut factors = Vec::new();
    let pw = |name: String, e: u32| if e == 1 { name } else { format!("{name}^{e}") };
    if k.lam > 0 {
        factors.push(pw("l".into(), k.lam));
    }
    for (j, &e) in k.x.iter().enumerate() {
        if e > 0 {
            factors.push(pw(format!("x{}", j + 1), e));
        }
    }
    if k.dlam > 0 {
        factors.push(pw("dl".into(), k.dlam));
    }
    for (j, &e) in k.dx.iter().enumerate() {
        if e > 0 {
            factors.push(pw(format!("dx{}", j + 1), e));
        }
    }
    let body = if factors.is_empty() {
        fmt_q(&mag)
    } else if mag.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", fmt_q(&mag), factors.join("*"))
    };
    (neg, body)
}

impl fmt::Display for OperatorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest derivation order first, then descending key.
        let mut terms: Vec<(&OpKey, &Q)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.order().cmp(&a.0.order()).then_with(|| b.0.cmp(a.0)));
        for (i, (k, c)) in terms.into_iter().enumerate() {
            let (neg, body) = format_term(k, c);
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &OperatorElement {
    type Output = OperatorElement;
    fn add(self, rhs: &OperatorElement) -> OperatorElement {
        assert_eq!(self.m, rhs.m, "operator variable count mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &OperatorElement {
    type Output = OperatorElement;
    fn sub(self, rhs: &OperatorElement) -> OperatorElement {
        assert_eq!(self.m, rhs.m, "operator variable count mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl Neg for &OperatorElement {
    type Output = OperatorElement;
    fn neg(self) -> OperatorElement {
        self.scale(&-Q::one())
    }
}

impl Mul for &OperatorElement {
    type Output = OperatorElement;
    fn mul(self, rhs: &OperatorElement) -> OperatorElement {
        assert_eq!(self.m, rhs.m, "operator variable count mismatch");
        let mut out = OperatorElement::zero(self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                self.mul_terms(a, ca, b, cb, &mut out);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RawOpTerm {
    #[serde(flatten)]
    key: OpKey,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    vars: usize,
    terms: Vec<RawOpTerm>,
}

impl Serialize for OperatorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawOperator {
            vars: self.m,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| RawOpTerm { key: k.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawOperator::deserialize(d)?;
        let mut out = OperatorElement::zero(raw.vars);
        for t in raw.terms {
            if t.key.x.len() != raw.vars || t.key.dx.len() != raw.vars {
                return Err(D::Error::custom("operator term has the wrong number of variables"));
            }
            let c = crate::rational::parse_q(&format!("{}/{}", t.num, t.den)).map_err(D::Error::custom)?;
            out.add_term(t.key, c);
        }
        Ok(out)
    }
}

/// Distinguishes `□_p` from its λ-scaled version `□̄_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxLevel {
    Ordinary,
    Lambda,
}

/// `∏_{p_j>0} D_j^{p_j} - ∏_{p_j<0} D_j^{-p_j}` with `D_j = ∂_j` or `λ∂_j`.
pub fn box_operator(p: &[i64], level: BoxLevel) -> OperatorElement {
    let plus: Vec<u32> = p.iter().map(|&x| x.max(0) as u32).collect();
    let minus: Vec<u32> = p.iter().map(|&x| (-x).max(0) as u32).collect();
    &derivation_monomial(&plus, level) - &derivation_monomial(&minus, level)
}

/// `∏ ∂_j^{b_j}` or `∏ (λ∂_j)^{b_j}`.
pub fn derivation_monomial(b: &[u32], level: BoxLevel) -> OperatorElement {
    let m = b.len();
    let total: u32 = b.iter().sum();
    let key = OpKey { lam: if level == BoxLevel::Lambda { total } else { 0 }, x: vec![0; m], dlam: 0, dx: b.to_vec() };
    OperatorElement::from_key(m, key, Q::one())
}

fn check_index(config: &PointConfiguration, i: usize) -> Result<(), WeylError> {
    if i >= config.rank() {
        return Err(WeylError::IndexOutOfRange { index: i, len: config.rank() });
    }
    Ok(())
}

/// `Σ_j a_{ji} x_j ∂_j`, optionally with every summand multiplied by `λ`.
fn euler_sum(config: &PointConfiguration, i: usize, lambda: bool) -> OperatorElement {
    let m = config.len();
    let mut out = OperatorElement::zero(m);
    for j in 0..m {
        let mut k = OpKey::unit(m);
        k.lam = u32::from(lambda);
        k.x[j] = 1;
        k.dx[j] = 1;
        out.add_term(k, q(config.point(j)[i]));
    }
    out
}

/// `E_i(γ) = Σ_j a_{ji} x_j ∂_j - γ_i`, with `i` a 0-based coordinate index.
pub fn euler_operator(config: &PointConfiguration, i: usize, gamma: &[Q]) -> Result<OperatorElement, WeylError> {
    check_index(config, i)?;
    check_len(gamma.len(), config.rank())?;
    Ok(&euler_sum(config, i, false) - &OperatorElement::scalar(config.len(), gamma[i].clone()))
}

/// `Σ_j a_{ji} λ x_j ∂_j - λ γ_i`.
pub fn rtilde_euler(config: &PointConfiguration, i: usize, gamma: &[Q]) -> Result<OperatorElement, WeylError> {
    check_index(config, i)?;
    check_len(gamma.len(), config.rank())?;
    let m = config.len();
    Ok(&euler_sum(config, i, true) - &OperatorElement::lambda(m).scale(&gamma[i]))
}

/// `λ²∂_λ + nλ + Σ_j λ x_j ∂_j`.
pub fn rtilde_grading(config: &PointConfiguration) -> OperatorElement {
    let m = config.len();
    let mut out = &OperatorElement::lambda_sq_d_lambda(m) + &OperatorElement::lambda(m).scale(&q(config.rank() as i64));
    for j in 0..m {
        out = &out + &(&OperatorElement::x(m, j) * &OperatorElement::lambda_dx(m, j));
    }
    out
}

fn check_len(found: usize, expected: usize) -> Result<(), WeylError> {
    if found != expected {
        return Err(WeylError::Length { expected, found });
    }
    Ok(())
}

/// Outcome of the three identity families checked by [`verify_conjugation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub d_level_euler: bool,
    pub lambda_level_euler: bool,
    pub lambda_level_grading: bool,
    pub box_commutation: bool,
}

impl ConjugationReport {
    pub fn all(&self) -> bool {
        self.d_level_euler && self.lambda_level_euler && self.lambda_level_grading && self.box_commutation
    }
}

/// Checks, as exact operator identities, that multiplication by `∏∂_j^{b_j}`
/// (resp. `∏(λ∂_j)^{b_j}`) intertwines the Euler data at `c1` and `c2`
/// where `c1 = c2 + Σ b_j a_j`, that the grading operator commutes with it,
/// and that the box operators of a kernel lattice basis commute with it.
pub fn verify_conjugation(
    config: &PointConfiguration,
    beta: &[Q],
    c1: &[Q],
    c2: &[Q],
    b: &[i64],
) -> Result<ConjugationReport, WeylError> {
    let n = config.rank();
    let m = config.len();
    check_len(beta.len(), n)?;
    check_len(c1.len(), n)?;
    check_len(c2.len(), n)?;
    check_len(b.len(), m)?;
    if let Some(index) = b.iter().position(|&x| x < 0) {
        return Err(WeylError::NegativeShift { index });
    }
    let shift = config.combine(b);
    for i in 0..n {
        if c1[i] != &c2[i] + q(shift[i]) {
            return Err(WeylError::InconsistentShift { coordinate: i });
        }
    }
    let bu: Vec<u32> = b.iter().map(|&x| x as u32).collect();
    let big_b = derivation_monomial(&bu, BoxLevel::Ordinary);
    let big_bl = derivation_monomial(&bu, BoxLevel::Lambda);
    let lam = OperatorElement::lambda(m);

    let mut d_ok = true;
    let mut l_ok = true;
    for i in 0..n {
        let e = euler_sum(config, i, false);
        let left = &OperatorElement::scalar(m, &c1[i] - &beta[i]) + &e;
        let right = &OperatorElement::scalar(m, &c2[i] - &beta[i]) + &e;
        d_ok &= &left * &big_b == &big_b * &right;

        let el = euler_sum(config, i, true);
        let left = &lam.scale(&(&c1[i] - &beta[i])) + &el;
        let right = &lam.scale(&(&c2[i] - &beta[i])) + &el;
        l_ok &= &left * &big_bl == &big_bl * &right;
    }

    let grading = rtilde_grading(config);
    let mut g_ok = (&grading * &big_bl) == (&big_bl * &grading);
    for j in 0..m {
        let single = &OperatorElement::lambda_sq_d_lambda(m) + &(&OperatorElement::x(m, j) * &OperatorElement::lambda_dx(m, j));
        let ldj = OperatorElement::lambda_dx(m, j);
        g_ok &= single.commutator(&ldj).is_zero();
    }

    let mut box_ok = true;
    for p in &kernel_lattice(config).kernel_basis {
        let bx = box_operator(p, BoxLevel::Ordinary);
        let bl = box_operator(p, BoxLevel::Lambda);
        box_ok &= bx.commutator(&big_b).is_zero() && bl.commutator(&big_bl).is_zero();
    }
    Ok(ConjugationReport { d_level_euler: d_ok, lambda_level_euler: l_ok, lambda_level_grading: g_ok, box_commutation: box_ok })
}
