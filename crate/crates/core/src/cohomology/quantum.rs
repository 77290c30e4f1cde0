//! Quantum product tables with formal parameters, their axioms, the induced
//! structures on `Cok N` and `Ker N`, and the quantum D-module connection.
//!
//! Structure constants are polynomials in `q_1..q_l` truncated at a fixed total
//! degree; every product and curvature component is computed modulo that truncation.

use super::bundle::BundleCohomology;
use super::CohomError;
use crate::linalg::{column_space, extend_basis, in_span, unit_vector, QMatrix};
use crate::poly::Polynomial;
use crate::rational::{fmt_q, parse_q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Row-major matrix with polynomial entries.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    /// Complex degree of `q`, so `deg a + deg b = deg c + Σ d_i deg q_i` for `q^d e_c` in `e_a • e_b`.
    pub degree: i64,
}

/// A degree-one class `ξ` and the parameter `q` with `∇_ξ = q ∂_q - λ^{-1} ξ•`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameElement {
    pub element: Vec<Q>,
    pub param: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumTable {
    pub dim: usize,
    pub degrees: Vec<i64>,
    pub params: Vec<Param>,
    pub unit: usize,
    pub truncation: u32,
    /// Coordinates of the Euler field class.
    pub euler: Vec<Q>,
    pub frame: Vec<FrameElement>,
    /// The class whose cup product is `N`; enables the divisor and ideal checks.
    pub gamma: Option<Vec<Q>>,
    /// `products[a][b][c]` is the coefficient of `e_c` in `e_a • e_b`.
    pub products: Vec<Vec<Vec<Polynomial>>>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    q: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    a: usize,
    b: usize,
    c: usize,
    terms: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct FrameFile {
    element: Vec<String>,
    #[serde(default)]
    param: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    dim: usize,
    degrees: Vec<i64>,
    #[serde(default)]
    params: Vec<Param>,
    #[serde(default)]
    unit: usize,
    truncation: u32,
    #[serde(default)]
    euler: Option<Vec<String>>,
    #[serde(default)]
    frame: Vec<FrameFile>,
    #[serde(default)]
    gamma: Option<Vec<String>>,
    products: Vec<EntryFile>,
}

fn table_err(message: impl Into<String>) -> CohomError {
    CohomError::Table { message: message.into() }
}

fn parse_vec(v: &[String], dim: usize, what: &str) -> Result<Vec<Q>, CohomError> {
    if v.len() != dim {
        return Err(table_err(format!("{what} has {} entries, expected {dim}", v.len())));
    }
    v.iter().map(|s| parse_q(s).map_err(|e| table_err(format!("{what}: {e}")))).collect()
}

fn fmt_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

/// Total-degree truncation applied after every product.
fn trunc(p: &Polynomial, t: u32) -> Polynomial {
    p.truncate_degree(t)
}

/// Applies a Q-linear map to a polynomial vector one `q`-monomial at a time.
fn coefficientwise(v: &[Polynomial], nvars: usize, out_dim: usize, f: impl Fn(&[Q]) -> Vec<Q>) -> Vec<Polynomial> {
    let monos: BTreeSet<Vec<u32>> = v.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    let mut out = vec![Polynomial::zero(nvars); out_dim];
    for mono in monos {
        let x: Vec<Q> = v.iter().map(|p| p.coeff(&mono)).collect();
        for (i, y) in f(&x).into_iter().enumerate() {
            out[i].add_term(mono.clone(), y);
        }
    }
    out
}

/// Coefficient vectors of each `q`-monomial.
fn coefficient_vectors(v: &[Polynomial]) -> Vec<Vec<Q>> {
    let monos: BTreeSet<Vec<u32>> = v.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    monos.into_iter().map(|m| v.iter().map(|p| p.coeff(&m)).collect()).collect()
}

impl QuantumTable {
    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn from_json(text: &str) -> Result<Self, CohomError> {
        let f: TableFile = serde_json::from_str(text).map_err(|e| table_err(e.to_string()))?;
        let dim = f.dim;
        let l = f.params.len();
        if f.degrees.len() != dim {
            return Err(table_err(format!("degrees has {} entries, expected {dim}", f.degrees.len())));
        }
        if f.unit >= dim {
            return Err(table_err(format!("unit index {} out of range", f.unit)));
        }
        let mut products = vec![vec![vec![Polynomial::zero(l); dim]; dim]; dim];
        for e in &f.products {
            if e.a >= dim || e.b >= dim || e.c >= dim {
                return Err(table_err(format!("product entry ({}, {}, {}) out of range", e.a, e.b, e.c)));
            }
            for t in &e.terms {
                if t.q.len() != l {
                    return Err(table_err(format!("exponent {:?} does not match {l} parameters", t.q)));
                }
                let c = parse_q(&t.coef).map_err(|err| table_err(format!("coefficient {:?}: {err}", t.coef)))?;
                products[e.a][e.b][e.c].add_term(t.q.clone(), c);
            }
        }
        let euler = match &f.euler {
            Some(v) => parse_vec(v, dim, "euler")?,
            None => vec![Q::zero(); dim],
        };
        let mut frame = Vec::new();
        for fr in &f.frame {
            if fr.param.is_some_and(|p| p >= l) {
                return Err(table_err(format!("frame parameter {:?} out of range", fr.param)));
            }
            frame.push(FrameElement { element: parse_vec(&fr.element, dim, "frame element")?, param: fr.param });
        }
        let gamma = f.gamma.as_ref().map(|g| parse_vec(g, dim, "gamma")).transpose()?;
        let mut table = QuantumTable {
            dim,
            degrees: f.degrees,
            params: f.params,
            unit: f.unit,
            truncation: f.truncation,
            euler,
            frame,
            gamma,
            products,
        };
        table.products = table.truncated_products(table.truncation);
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let mut products = Vec::new();
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    let p = &self.products[a][b][c];
                    if p.is_zero() {
                        continue;
                    }
                    let terms = p.terms().iter().map(|(e, x)| TermFile { q: e.clone(), coef: fmt_q(x) }).collect();
                    products.push(EntryFile { a, b, c, terms });
                }
            }
        }
        let f = TableFile {
            dim: self.dim,
            degrees: self.degrees.clone(),
            params: self.params.clone(),
            unit: self.unit,
            truncation: self.truncation,
            euler: Some(fmt_vec(&self.euler)),
            frame: self.frame.iter().map(|fr| FrameFile { element: fmt_vec(&fr.element), param: fr.param }).collect(),
            gamma: self.gamma.as_ref().map(|g| fmt_vec(g)),
            products,
        };
        serde_json::to_string_pretty(&f).expect("table serializes")
    }

    /// The cup product of `H*(Y)` with no quantum parameters. The frame consists of
    /// `γ` and the degree-one basis classes of the base; the Euler field is zero.
    pub fn classical(bc: &BundleCohomology, truncation: u32) -> Self {
        let dim = bc.rank();
        let mut products = vec![vec![vec![Polynomial::zero(0); dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let v = bc.mul(&unit_vector(dim, a), &unit_vector(dim, b));
                for (c, x) in v.into_iter().enumerate() {
                    products[a][b][c] = Polynomial::constant(0, x);
                }
            }
        }
        let degrees: Vec<i64> = bc.degrees().into_iter().map(|d| d as i64).collect();
        let mut frame = Vec::new();
        if bc.r > 0 {
            frame.push(FrameElement { element: bc.gamma(), param: None });
        }
        for i in 0..bc.base.rank() {
            if bc.base.degree(i) == 1 {
                frame.push(FrameElement { element: unit_vector(dim, i), param: None });
            }
        }
        QuantumTable {
            dim,
            degrees,
            params: Vec::new(),
            unit: 0,
            truncation,
            euler: vec![Q::zero(); dim],
            frame,
            gamma: Some(bc.gamma()),
            products,
        }
    }

    fn truncated_products(&self, t: u32) -> Vec<Vec<Vec<Polynomial>>> {
        self.products.iter().map(|row| row.iter().map(|v| v.iter().map(|p| trunc(p, t)).collect()).collect()).collect()
    }

    /// Same table with a lower truncation order.
    pub fn with_truncation(&self, t: u32) -> Self {
        let mut out = self.clone();
        out.truncation = t;
        out.products = self.truncated_products(t);
        out
    }

    fn poly_const(&self, c: Q) -> Polynomial {
        Polynomial::constant(self.nparams(), c)
    }

    /// `x • y` for vectors with polynomial coordinates.
    pub fn mul_poly(&self, x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
        let l = self.nparams();
        let mut out = vec![Polynomial::zero(l); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (c, o) in out.iter_mut().enumerate() {
                    let p = &self.products[a][b][c];
                    if !p.is_zero() {
                        *o = &*o + &trunc(&(&s * p), self.truncation);
                    }
                }
            }
        }
        out
    }

    pub fn lift(&self, x: &[Q]) -> Vec<Polynomial> {
        x.iter().map(|c| self.poly_const(c.clone())).collect()
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Polynomial> {
        self.mul_poly(&self.lift(x), &self.lift(y))
    }

    /// Matrix of `x •`: column `b` holds `x • e_b`.
    pub fn left_matrix(&self, x: &[Q]) -> PolyMatrix {
        let mut m = vec![vec![Polynomial::zero(self.nparams()); self.dim]; self.dim];
        for b in 0..self.dim {
            for (c, p) in self.mul(x, &unit_vector(self.dim, b)).into_iter().enumerate() {
                m[c][b] = p;
            }
        }
        m
    }

    /// `N`: cup product with `γ`, read off at `q = 0`.
    pub fn classical_gamma_matrix(&self) -> Option<QMatrix> {
        let g = self.gamma.as_ref()?;
        let zero = vec![Q::zero(); self.nparams()];
        let m = self.left_matrix(g);
        let rows: Vec<Vec<Q>> = m.iter().map(|row| row.iter().map(|p| p.eval(&zero)).collect()).collect();
        Some(QMatrix::from_rows(&rows))
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let mut items = Vec::new();
        let d = self.dim;
        let e = |i| unit_vector(d, i);
        let mut bad = None;
        'comm: for a in 0..d {
            for b in 0..a {
                if self.products[a][b] != self.products[b][a] {
                    bad = Some(format!("e{a} * e{b} != e{b} * e{a}"));
                    break 'comm;
                }
            }
        }
        items.push(AxiomCheck::new("commutativity", bad));

        let mut bad = None;
        let basis: Vec<Vec<Polynomial>> = (0..d).map(|i| self.lift(&e(i))).collect();
        'assoc: for a in 0..d {
            for b in 0..d {
                let ab = self.mul_poly(&basis[a], &basis[b]);
                for c in 0..d {
                    let left = self.mul_poly(&ab, &basis[c]);
                    let right = self.mul_poly(&basis[a], &self.mul_poly(&basis[b], &basis[c]));
                    if left != right {
                        bad = Some(format!("(e{a} * e{b}) * e{c} != e{a} * (e{b} * e{c})"));
                        break 'assoc;
                    }
                }
            }
        }
        items.push(AxiomCheck::new("associativity", bad));

        let bad = (0..d).find(|&b| self.mul(&e(self.unit), &e(b)) != basis[b]).map(|b| format!("unit * e{b} != e{b}"));
        items.push(AxiomCheck::new("unit", bad));

        let mut bad = None;
        'deg: for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for exp in self.products[a][b][c].terms().keys() {
                        let qdeg: i64 = exp.iter().zip(&self.params).map(|(&k, p)| k as i64 * p.degree).sum();
                        if self.degrees[a] + self.degrees[b] != self.degrees[c] + qdeg {
                            bad = Some(format!("term q^{exp:?} of e{c} in e{a} * e{b} has the wrong degree"));
                            break 'deg;
                        }
                    }
                }
            }
        }
        items.push(AxiomCheck::new("degree", bad));

        if let Some(g) = &self.gamma {
            let bad = (0..d)
                .find(|&b| self.mul(g, &e(b)).iter().any(|p| p.terms().keys().any(|k| k.iter().any(|&x| x > 0))))
                .map(|b| format!("gamma * e{b} has quantum corrections"));
            items.push(AxiomCheck::new("divisor", bad));
            let n = self.classical_gamma_matrix().expect("gamma present");
            let image = column_space(&n);
            let kernel = n.nullspace();
            items.push(AxiomCheck::new("ideal Im N", self.ideal_failure(&image)));
            items.push(AxiomCheck::new("ideal Ker N", self.ideal_failure(&kernel)));
        }
        AxiomReport { items }
    }

    fn ideal_failure(&self, sub: &[Vec<Q>]) -> Option<String> {
        for (i, v) in sub.iter().enumerate() {
            for b in 0..self.dim {
                let prod = self.mul(v, &unit_vector(self.dim, b));
                if coefficient_vectors(&prod).iter().any(|w| !in_span(sub, w)) {
                    return Some(format!("generator {i} times e{b} leaves the subspace"));
                }
            }
        }
        None
    }

    /// Classical part against the cup product of `bc`.
    pub fn classical_limit_matches(&self, bc: &BundleCohomology) -> bool {
        if bc.rank() != self.dim {
            return false;
        }
        let zero = vec![Q::zero(); self.nparams()];
        (0..self.dim).all(|a| {
            (0..self.dim).all(|b| {
                let cup = bc.mul(&unit_vector(self.dim, a), &unit_vector(self.dim, b));
                (0..self.dim).all(|c| self.products[a][b][c].eval(&zero) == cup[c])
            })
        })
    }

    /// Product induced on `Cok N`, written in classes of a complement to `Im N`
    /// made of standard basis vectors.
    pub fn induced_cokernel_product(&self) -> Result<InducedProduct, CohomError> {
        let report = self.check_axioms();
        if !report.passed() {
            return Err(CohomError::Axioms { failures: report.failures() });
        }
        let n = self.classical_gamma_matrix().ok_or(CohomError::MissingGamma)?;
        let image = column_space(&n);
        let units: Vec<Vec<Q>> = (0..self.dim).map(|i| unit_vector(self.dim, i)).collect();
        let complement = extend_basis(&image, &units);
        let mut all = image.clone();
        all.extend(complement.iter().cloned());
        let solve = QMatrix::from_cols(&all, self.dim);
        let k = complement.len();
        let skip = image.len();
        let project = |v: &[Q]| -> Vec<Q> { solve.solve(v).expect("basis of the whole space")[skip..].to_vec() };
        let mut products = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                let v = self.mul(&complement[a], &complement[b]);
                products[a][b] = coefficientwise(&v, self.nparams(), k, project);
            }
        }
        Ok(InducedProduct { representatives: complement, products })
    }

    /// Action of each `e_a` on `Ker N`, in a basis of `Ker N`.
    pub fn kernel_action(&self) -> Result<KernelAction, CohomError> {
        let report = self.check_axioms();
        if !report.passed() {
            return Err(CohomError::Axioms { failures: report.failures() });
        }
        let n = self.classical_gamma_matrix().ok_or(CohomError::MissingGamma)?;
        let kernel = n.nullspace();
        let k = kernel.len();
        let solve = QMatrix::from_cols(&kernel, self.dim);
        let coords = |v: &[Q]| -> Vec<Q> { solve.solve(v).expect("product stays in the kernel") };
        let mut actions = Vec::new();
        for a in 0..self.dim {
            let mut m = vec![vec![Polynomial::zero(self.nparams()); k]; k];
            for (j, v) in kernel.iter().enumerate() {
                let prod = self.mul(&unit_vector(self.dim, a), v);
                for (i, p) in coefficientwise(&prod, self.nparams(), k, coords).into_iter().enumerate() {
                    m[i][j] = p;
                }
            }
            actions.push(m);
        }
        Ok(KernelAction { basis: kernel, actions })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl AxiomCheck {
    fn new(axiom: &str, failure: Option<String>) -> Self {
        AxiomCheck { axiom: axiom.into(), passed: failure.is_none(), detail: failure }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub items: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.items.iter().filter(|i| !i.passed).map(|i| i.axiom.clone()).collect()
    }

    pub fn get(&self, axiom: &str) -> Option<bool> {
        self.items.iter().find(|i| i.axiom == axiom).map(|i| i.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedProduct {
    pub representatives: Vec<Vec<Q>>,
    pub products: Vec<Vec<Vec<Polynomial>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelAction {
    pub basis: Vec<Vec<Q>>,
    /// `actions[a][i][j]`: coefficient of `k_i` in `e_a • k_j`.
    pub actions: Vec<PolyMatrix>,
}

/// `∇_{ξ_a} = q_a ∂_{q_a} - λ^{-1} C_a` and `∇_{λ∂_λ} = λ∂_λ + λ^{-1} U + μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QdmConnection {
    pub nparams: usize,
    pub truncation: u32,
    pub frame_params: Vec<Option<usize>>,
    /// `C_a`, the matrix of `ξ_a •`; the connection matrix is `-λ^{-1} C_a`.
    pub frame_matrices: Vec<PolyMatrix>,
    /// `U = E •`.
    pub euler_matrix: PolyMatrix,
    /// Diagonal of the grading operator.
    pub mu: Vec<Q>,
}

pub fn qdm_connection(table: &QuantumTable, truncation: u32) -> Result<QdmConnection, CohomError> {
    let table = table.with_truncation(truncation.min(table.truncation));
    let report = table.check_axioms();
    if !report.passed() {
        return Err(CohomError::Axioms { failures: report.failures() });
    }
    Ok(QdmConnection {
        nparams: table.nparams(),
        truncation: table.truncation,
        frame_params: table.frame.iter().map(|f| f.param).collect(),
        frame_matrices: table.frame.iter().map(|f| table.left_matrix(&f.element)).collect(),
        euler_matrix: table.left_matrix(&table.euler),
        mu: table.degrees.iter().map(|&d| Q::from_integer(d.into())).collect(),
    })
}

fn pm_zero(n: usize, l: usize) -> PolyMatrix {
    vec![vec![Polynomial::zero(l); n]; n]
}

fn pm_mul(a: &PolyMatrix, b: &PolyMatrix, l: usize, t: u32) -> PolyMatrix {
    let n = a.len();
    let mut out = pm_zero(n, l);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &trunc(&(&a[i][k] * &b[k][j]), t);
                }
            }
        }
    }
    out
}

fn pm_sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn pm_commutator(a: &PolyMatrix, b: &PolyMatrix, l: usize, t: u32) -> PolyMatrix {
    pm_sub(&pm_mul(a, b, l, t), &pm_mul(b, a, l, t))
}

fn pm_is_zero(a: &PolyMatrix) -> bool {
    a.iter().flatten().all(Polynomial::is_zero)
}

/// `q_p ∂_{q_p}`, or zero when the frame element has no parameter.
fn pm_euler_derivative(a: &PolyMatrix, param: Option<usize>, l: usize) -> PolyMatrix {
    let Some(p) = param else {
        return pm_zero(a.len(), l);
    };
    let mut e = vec![0u32; l];
    e[p] = 1;
    a.iter().map(|r| r.iter().map(|x| x.derivative(p).mul_monomial(&e, &Q::one())).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureComponent {
    pub component: String,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub truncation: u32,
    pub components: Vec<CurvatureComponent>,
}

impl FlatnessReport {
    pub fn flat(&self) -> bool {
        self.components.iter().all(|c| c.vanishes)
    }
}

/// Curvature components, coefficient by coefficient in `λ^{-1}` and `λ^{-2}`:
/// `∂_a C_b - ∂_b C_a`, `[C_a, C_b]`, `C_a - ∂_a U - [μ, C_a]` and `[U, C_a]`.
pub fn flatness_check(conn: &QdmConnection) -> FlatnessReport {
    let l = conn.nparams;
    let t = conn.truncation;
    let c = &conn.frame_matrices;
    let mut components = Vec::new();
    let mut push = |name: String, m: PolyMatrix| components.push(CurvatureComponent { component: name, vanishes: pm_is_zero(&m) });
    for a in 0..c.len() {
        for b in a + 1..c.len() {
            let da_cb = pm_euler_derivative(&c[b], conn.frame_params[a], l);
            let db_ca = pm_euler_derivative(&c[a], conn.frame_params[b], l);
            push(format!("d{a} C{b} - d{b} C{a}"), pm_sub(&da_cb, &db_ca));
            push(format!("[C{a}, C{b}]"), pm_commutator(&c[a], &c[b], l, t));
        }
    }
    let n = conn.mu.len();
    for (a, ca) in c.iter().enumerate() {
        let du = pm_euler_derivative(&conn.euler_matrix, conn.frame_params[a], l);
        let mut mu_c = pm_zero(n, l);
        for i in 0..n {
            for j in 0..n {
                mu_c[i][j] = ca[i][j].scale(&(&conn.mu[i] - &conn.mu[j]));
            }
        }
        push(format!("C{a} - d{a} U - [mu, C{a}]"), pm_sub(&pm_sub(ca, &du), &mu_c));
        push(format!("[U, C{a}]"), pm_commutator(&conn.euler_matrix, ca, l, t));
    }
    FlatnessReport { truncation: t, components }
}

/// Nonzero structure constants, for reports.
pub fn table_summary(table: &QuantumTable) -> BTreeMap<String, String> {
    let names: Vec<String> = table.params.iter().map(|p| p.name.clone()).collect();
    let mut out = BTreeMap::new();
    for a in 0..table.dim {
        for b in a..table.dim {
            for c in 0..table.dim {
                let p = &table.products[a][b][c];
                if !p.is_zero() {
                    out.insert(format!("e{a}*e{b}->e{c}"), p.display_with(&names));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::bundle::{bundle_cohomology, chern_classes};
    use crate::cohomology::ring::cohomology_ring;
    use crate::fan::Fan;
    use crate::rational::q;

    pub(crate) const P1_QUANTUM: &str = r#"{
        "dim": 2, "degrees": [0, 1], "unit": 0, "truncation": 4,
        "params": [{"name": "q", "degree": 2}],
        "euler": ["0", "2"],
        "frame": [{"element": ["0", "1"], "param": 0}],
        "products": [
            {"a": 0, "b": 0, "c": 0, "terms": [{"q": [0], "coef": "1"}]},
            {"a": 0, "b": 1, "c": 1, "terms": [{"q": [0], "coef": "1"}]},
            {"a": 1, "b": 0, "c": 1, "terms": [{"q": [0], "coef": "1"}]},
            {"a": 1, "b": 1, "c": 0, "terms": [{"q": [1], "coef": "1"}]}
        ]
    }"#;

    fn local_p2() -> BundleCohomology {
        let ring = cohomology_ring(&Fan::projective(2)).unwrap();
        bundle_cohomology(&ring, &chern_classes(&ring, &[vec![1, 1, 1]]).unwrap()).unwrap()
    }

    #[test]
    fn projective_line_small_quantum_product() {
        let t = QuantumTable::from_json(P1_QUANTUM).unwrap();
        assert!(t.check_axioms().passed());
        let h = unit_vector(2, 1);
        assert_eq!(t.mul(&h, &h), vec![Polynomial::var(1, 0), Polynomial::zero(1)]);
        for order in 0..=4 {
            let conn = qdm_connection(&t, order).unwrap();
            let report = flatness_check(&conn);
            assert!(report.flat(), "order {order}: {report:?}");
        }
    }

    #[test]
    fn wrong_euler_field_is_not_flat() {
        let mut t = QuantumTable::from_json(P1_QUANTUM).unwrap();
        t.euler = vec![q(0), q(1)];
        let report = flatness_check(&qdm_connection(&t, 4).unwrap());
        let failing: Vec<&str> = report.components.iter().filter(|c| !c.vanishes).map(|c| c.component.as_str()).collect();
        assert_eq!(failing, vec!["C0 - d0 U - [mu, C0]"]);
    }

    #[test]
    fn classical_local_table() {
        let bc = local_p2();
        let t = QuantumTable::classical(&bc, 0);
        let r = t.check_axioms();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(t.classical_limit_matches(&bc));
        assert_eq!(t.classical_gamma_matrix().unwrap(), bc.n);
        let report = flatness_check(&qdm_connection(&t, 0).unwrap());
        assert!(report.flat());
        let back = QuantumTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn induced_structures_on_local_table() {
        let bc = local_p2();
        let t = QuantumTable::classical(&bc, 0);
        let cok = t.induced_cokernel_product().unwrap();
        assert_eq!(cok.representatives.len(), 3);
        let ker = t.kernel_action().unwrap();
        assert_eq!(ker.basis.len(), 3);
        // γ acts by zero on Ker N and on Cok N.
        let g = t.gamma.clone().unwrap();
        let pos = (0..t.dim).find(|&i| g == unit_vector(t.dim, i)).unwrap();
        assert!(ker.actions[pos].iter().flatten().all(Polynomial::is_zero));
        // The unit acts as the identity on the kernel.
        for (i, row) in ker.actions[0].iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                assert_eq!(*p, Polynomial::constant(0, if i == j { q(1) } else { q(0) }));
            }
        }
    }

    #[test]
    fn asymmetric_table_fails_commutativity_only() {
        let text = P1_QUANTUM.replace(
            r#"{"a": 1, "b": 0, "c": 1, "terms": [{"q": [0], "coef": "1"}]}"#,
            r#"{"a": 1, "b": 0, "c": 1, "terms": [{"q": [0], "coef": "2"}]}"#,
        );
        let t = QuantumTable::from_json(&text).unwrap();
        let r = t.check_axioms();
        assert_eq!(r.get("commutativity"), Some(false));
        assert!(matches!(qdm_connection(&t, 4), Err(CohomError::Axioms { .. })));
    }

    #[test]
    fn quantum_correction_to_gamma_breaks_divisor_axiom() {
        let bc = local_p2();
        let mut t = QuantumTable::classical(&bc, 2);
        t.params = vec![Param { name: "q".into(), degree: 0 }];
        t.products = t
            .products
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|p| p.extend_vars(1)).collect()).collect())
            .collect();
        let g = 3; // γ sits at index d = 3
        assert_eq!(t.gamma.as_deref(), Some(unit_vector(6, g).as_slice()));
        // γ • 1 picks up q·1, compatible with a degree-zero parameter.
        for (a, b) in [(g, 0), (0, g)] {
            let cur = t.products[a][b][g].clone();
            t.products[a][b][g] = &cur + &Polynomial::var(1, 0);
        }
        let r = t.check_axioms();
        assert_eq!(r.get("divisor"), Some(false));
        assert_eq!(r.get("commutativity"), Some(true));
        assert_eq!(r.get("degree"), Some(true));
    }

    #[test]
    fn image_of_n_not_closed_breaks_ideal_axiom() {
        // Commutative table with gamma = e1: Im N = span{e0, e1}, but e2 * e0 = e2.
        let text = r#"{
            "dim": 3, "degrees": [0, 0, 0], "unit": 0, "truncation": 0,
            "gamma": ["0", "1", "0"],
            "products": [
                {"a": 0, "b": 0, "c": 0, "terms": [{"q": [], "coef": "1"}]},
                {"a": 0, "b": 1, "c": 1, "terms": [{"q": [], "coef": "1"}]},
                {"a": 1, "b": 0, "c": 1, "terms": [{"q": [], "coef": "1"}]},
                {"a": 0, "b": 2, "c": 2, "terms": [{"q": [], "coef": "1"}]},
                {"a": 2, "b": 0, "c": 2, "terms": [{"q": [], "coef": "1"}]},
                {"a": 1, "b": 1, "c": 1, "terms": [{"q": [], "coef": "1"}]},
                {"a": 1, "b": 2, "c": 0, "terms": [{"q": [], "coef": "1"}]},
                {"a": 2, "b": 1, "c": 0, "terms": [{"q": [], "coef": "1"}]}
            ]
        }"#;
        let t = QuantumTable::from_json(text).unwrap();
        let r = t.check_axioms();
        assert_eq!(r.get("ideal Im N"), Some(false));
        assert_eq!(r.get("commutativity"), Some(true));
    }
}
