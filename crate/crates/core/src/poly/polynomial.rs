use super::order::MonomialOrder;
use crate::rational::{fmt_q, parse_q, q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Mono = Vec<u32>;

/// Sparse polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Q::one())
    }

    pub fn monomial(nvars: usize, exp: Mono, c: Q) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs with integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(c, e)| (e.to_vec(), q(*c))))
    }

    pub fn add_term(&mut self, exp: Mono, c: Q) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, exp: &[u32], c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    if k > 0 {
                        v *= num_traits::pow(x.clone(), k as usize);
                    }
                }
                v
            })
            .sum()
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * q(e[i] as i64));
            }
        }
        out
    }

    /// Appends `k` new variables with exponent zero.
    pub fn extend_vars(&self, k: usize) -> Self {
        Polynomial {
            nvars: self.nvars + k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.extend(std::iter::repeat_n(0, k));
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Removes trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Option<Self> {
        if self.terms.keys().any(|e| e[nvars..].iter().any(|&x| x > 0)) {
            return None;
        }
        Some(Polynomial {
            nvars,
            terms: self.terms.iter().map(|(e, c)| (e[..nvars].to_vec(), c.clone())).collect(),
        })
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Mono, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Mono, &Q)> {
        let mut v: Vec<(&Mono, &Q)> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// True when every term has the same weighted degree.
    pub fn is_homogeneous_wrt(&self, weights: &[i64]) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().zip(weights).map(|(&k, w)| k as i64 * w).sum::<i64>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate_degree(&self, max_degree: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_degree).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let order = MonomialOrder::grevlex(self.nvars);
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = *c < Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { names[v].clone() } else { format!("{}^{}", names[v], k) })
                .collect();
            if factors.is_empty() {
                out.push_str(&fmt_q(&mag));
            } else if mag.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_q(&mag), factors.join("*")));
            }
        }
        out
    }
}

pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names("x", self.nvars)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exp: Vec<u32>,
    num: String,
    #[serde(default = "one_str")]
    den: String,
}

fn one_str() -> String {
    "1".into()
}

#[derive(Serialize, Deserialize)]
struct RawPolynomial {
    vars: usize,
    terms: Vec<RawTerm>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawPolynomial {
            vars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| RawTerm { exp: e.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawPolynomial::deserialize(d)?;
        let mut p = Polynomial::zero(raw.vars);
        for t in raw.terms {
            if t.exp.len() != raw.vars {
                return Err(D::Error::custom(format!("exponent {:?} does not have {} entries", t.exp, raw.vars)));
            }
            let c = parse_q(&format!("{}/{}", t.num, t.den)).map_err(D::Error::custom)?;
            p.add_term(t.exp, c);
        }
        Ok(p)
    }
}
