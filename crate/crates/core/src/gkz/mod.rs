//! Better-behaved GKZ presentations, their ordinary and λ-level ideals, and
//! numerical checks of candidate solutions.

mod series;

pub use series::{gamma_series, LaurentSeries, SeriesSolution};

use crate::lattice::{
    kernel_lattice, representation, semigroup_module_generators, LatticeError, PointConfiguration, SemigroupSpec,
};
use crate::poly::{binomial_exponent, lattice_ideal, GroebnerError};
use crate::rational::{abs, fmt_q, q, Q};
use crate::weyl::{
    box_operator, derivation_monomial, euler_operator, rtilde_euler, rtilde_grading, verify_conjugation, BoxLevel,
    ConjugationReport, OperatorElement, WeylError,
};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkzError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("no representation of {target:?} in Z>=0 A found within bound {bound}")]
    NoRepresentation { target: Vec<i64>, bound: u64 },
    #[error("base exponent {v:?} does not sum to gamma {gamma:?}")]
    BaseExponent { v: Vec<i64>, gamma: Vec<i64> },
    #[error("series has a pole at the evaluation point (exponent {exponent:?})")]
    Pole { exponent: Vec<i64> },
    #[error("operator involves lambda and cannot act on a series in x alone")]
    LambdaOperator,
    #[error("tuple has no entry for c = {c:?}")]
    MissingEntry { c: Vec<i64> },
    #[error("intertwining identities failed: {0:?}")]
    IdentityFailure(ConjugationReport),
    #[error("explicit generator {c:?} lies outside the cone of A")]
    OutsideCone { c: Vec<i64> },
}

/// Which set Γ the module is built on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaSet {
    All,
    Interior,
    Explicit(Vec<Vec<i64>>),
}

/// Symbolic relation on the generators `e(c)` of the module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RelationSchema {
    /// `∂_{x_j} e(c) = e(c + a_j)`.
    Shift { c: Vec<i64>, j: usize, target: Vec<i64> },
    /// `(Σ_j a_{ji} x_j ∂_{x_j} + c_i - β_i) e(c) = 0`.
    Euler {
        c: Vec<i64>,
        i: usize,
        #[serde(with = "crate::rational::serde_q")]
        constant: Q,
    },
}

impl RelationSchema {
    pub fn display(&self) -> String {
        match self {
            RelationSchema::Shift { c, j, target } => format!("dx{} e({:?}) = e({:?})", j + 1, c, target),
            RelationSchema::Euler { c, i, constant } => {
                format!("(E{} + {}) e({:?}) = 0", i + 1, fmt_q(constant), c)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BBGKZPresentation {
    pub config: PointConfiguration,
    pub gamma_set: GammaSet,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub beta: Vec<Q>,
    pub module_generators: Vec<Vec<i64>>,
    pub relation_schemas: Vec<RelationSchema>,
}

pub fn build_bb_presentation(
    config: &PointConfiguration,
    gamma_set: GammaSet,
    beta: &[Q],
    bound: u64,
) -> Result<BBGKZPresentation, GkzError> {
    if beta.len() != config.rank() {
        return Err(GkzError::Length { expected: config.rank(), found: beta.len() });
    }
    let module_generators = match &gamma_set {
        GammaSet::All => semigroup_module_generators(config, SemigroupSpec::All, bound)?,
        GammaSet::Interior => semigroup_module_generators(config, SemigroupSpec::Interior, bound)?,
        GammaSet::Explicit(gens) => {
            let cone = crate::lattice::cone_facets(config);
            for c in gens {
                config.check_vector(c)?;
                if !cone.contains(c) {
                    return Err(GkzError::OutsideCone { c: c.clone() });
                }
            }
            gens.clone()
        }
    };
    let mut relation_schemas = Vec::new();
    for c in &module_generators {
        for (j, a) in config.points().iter().enumerate() {
            let target = c.iter().zip(a).map(|(x, y)| x + y).collect();
            relation_schemas.push(RelationSchema::Shift { c: c.clone(), j, target });
        }
        for i in 0..config.rank() {
            relation_schemas.push(RelationSchema::Euler { c: c.clone(), i, constant: q(c[i]) - &beta[i] });
        }
    }
    Ok(BBGKZPresentation { config: config.clone(), gamma_set, beta: beta.to_vec(), module_generators, relation_schemas })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GKZIdeal {
    pub level: BoxLevel,
    pub config: PointConfiguration,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub gamma: Vec<Q>,
    /// Elements of `L_A` whose box operators appear among the generators.
    pub box_vectors: Vec<Vec<i64>>,
    pub generators: Vec<OperatorElement>,
}

impl GKZIdeal {
    pub fn display(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

/// Exponent differences of the reduced lattice-ideal basis, i.e. a generating set of `I_{L_A}`.
pub fn lattice_generating_set(config: &PointConfiguration) -> Result<Vec<Vec<i64>>, GkzError> {
    let kernel = kernel_lattice(config).kernel_basis;
    let ideal = lattice_ideal(&kernel, config.len())?;
    Ok(ideal.gens.iter().filter_map(binomial_exponent).collect())
}

pub fn build_ordinary_ideal(config: &PointConfiguration, gamma: &[Q]) -> Result<GKZIdeal, GkzError> {
    let box_vectors = lattice_generating_set(config)?;
    let mut generators: Vec<OperatorElement> =
        box_vectors.iter().map(|p| box_operator(p, BoxLevel::Ordinary)).collect();
    for i in 0..config.rank() {
        generators.push(euler_operator(config, i, gamma)?);
    }
    Ok(GKZIdeal { level: BoxLevel::Ordinary, config: config.clone(), gamma: gamma.to_vec(), box_vectors, generators })
}

pub fn build_lambda_ideal(config: &PointConfiguration, gamma: &[Q]) -> Result<GKZIdeal, GkzError> {
    let box_vectors = lattice_generating_set(config)?;
    let mut generators: Vec<OperatorElement> = box_vectors.iter().map(|p| box_operator(p, BoxLevel::Lambda)).collect();
    generators.push(rtilde_grading(config));
    for i in 0..config.rank() {
        generators.push(rtilde_euler(config, i, gamma)?);
    }
    Ok(GKZIdeal { level: BoxLevel::Lambda, config: config.clone(), gamma: gamma.to_vec(), box_vectors, generators })
}

/// Multiplication by `∏∂_j^{b_j}` and `∏(λ∂_j)^{b_j}` relating the data at `c1` and `c2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Intertwiner {
    pub b: Vec<i64>,
    pub d_level: OperatorElement,
    pub lambda_level: OperatorElement,
    pub report: ConjugationReport,
}

pub fn intertwiner(
    config: &PointConfiguration,
    beta: &[Q],
    c1: &[i64],
    c2: &[i64],
    bound: u64,
) -> Result<Intertwiner, GkzError> {
    config.check_vector(c1)?;
    config.check_vector(c2)?;
    let diff: Vec<i64> = c1.iter().zip(c2).map(|(x, y)| x - y).collect();
    let b: Vec<i64> = representation(config, &diff, bound)
        .ok_or(GkzError::NoRepresentation { target: diff.clone(), bound })?
        .into_iter()
        .map(|x| x as i64)
        .collect();
    let qv = |v: &[i64]| v.iter().map(|&x| q(x)).collect::<Vec<Q>>();
    let report = verify_conjugation(config, beta, &qv(c1), &qv(c2), &b)?;
    if !report.all() {
        return Err(GkzError::IdentityFailure(report));
    }
    let bu: Vec<u32> = b.iter().map(|&x| x as u32).collect();
    Ok(Intertwiner {
        d_level: derivation_monomial(&bu, BoxLevel::Ordinary),
        lambda_level: derivation_monomial(&bu, BoxLevel::Lambda),
        b,
        report,
    })
}

/// `max_P |(P Φ)(point)|` over the generators of an ordinary-level ideal.
pub fn residual(ideal: &GKZIdeal, s: &LaurentSeries, point: &[Q]) -> Result<Q, GkzError> {
    if ideal.level != BoxLevel::Ordinary {
        return Err(GkzError::LambdaOperator);
    }
    let mut worst = Q::zero();
    for g in &ideal.generators {
        let v = abs(&s.apply(g)?.eval(point)?);
        if v > worst {
            worst = v;
        }
    }
    Ok(worst)
}

/// Per-relation residuals of a candidate tuple `(Φ_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BBCheckReport {
    pub relations: Vec<RelationResidual>,
    #[serde(with = "crate::rational::serde_q")]
    pub max_residual: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    #[serde(with = "crate::rational::serde_q")]
    pub residual: Q,
}

impl BBCheckReport {
    /// First relation attaining the maximal residual.
    pub fn worst_relation(&self) -> Option<&str> {
        self.relations.iter().find(|r| r.residual == self.max_residual).map(|r| r.relation.as_str())
    }
}

pub fn bb_solution_check(
    pres: &BBGKZPresentation,
    tuple: &BTreeMap<Vec<i64>, LaurentSeries>,
    point: &[Q],
) -> Result<BBCheckReport, GkzError> {
    let get = |c: &Vec<i64>| tuple.get(c).ok_or_else(|| GkzError::MissingEntry { c: c.clone() });
    let mut relations = Vec::new();
    for schema in &pres.relation_schemas {
        let value = match schema {
            RelationSchema::Shift { c, j, target } => get(c)?.derivative(*j).sub(get(target)?).eval(point)?,
            RelationSchema::Euler { c, i, constant } => {
                let mut op = euler_operator(&pres.config, *i, &vec![Q::zero(); pres.config.rank()])?;
                op = &op + &OperatorElement::scalar(pres.config.len(), constant.clone());
                get(c)?.apply(&op)?.eval(point)?
            }
        };
        relations.push(RelationResidual { relation: schema.display(), residual: abs(&value) });
    }
    let max_residual = relations.iter().map(|r| r.residual.clone()).max().unwrap_or_else(Q::zero);
    Ok(BBCheckReport { relations, max_residual })
}

/// Builds `Φ_c = ∂^{b(c)} ψ` for each `c` in `targets`, where `ψ` plays the role of `Φ_{c0}`
/// and `b(c)` is a representation of `c - c0` in `Z>=0 A`.
pub fn shift_closure(
    config: &PointConfiguration,
    psi: &LaurentSeries,
    c0: &[i64],
    targets: &[Vec<i64>],
    bound: u64,
) -> Result<BTreeMap<Vec<i64>, LaurentSeries>, GkzError> {
    let mut out = BTreeMap::new();
    for c in targets {
        let diff: Vec<i64> = c.iter().zip(c0).map(|(x, y)| x - y).collect();
        let b = representation(config, &diff, bound).ok_or(GkzError::NoRepresentation { target: diff, bound })?;
        out.insert(c.clone(), psi.derivatives(&b));
    }
    Ok(out)
}

/// Generators together with their one-step shifts `c + a_j`.
pub fn generators_and_shifts(pres: &BBGKZPresentation) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = pres.module_generators.clone();
    for c in &pres.module_generators {
        for a in pres.config.points() {
            all.push(c.iter().zip(a).map(|(x, y)| x + y).collect());
        }
    }
    all.sort();
    all.dedup();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn a23() -> PointConfiguration {
        PointConfiguration::new(1, vec![vec![2], vec![3]]).unwrap()
    }

    fn gauss() -> PointConfiguration {
        PointConfiguration::new(2, vec![vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap()
    }

    fn local_p2() -> PointConfiguration {
        PointConfiguration::new(3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, -1, 1], vec![0, 0, 1]]).unwrap()
    }

    #[test]
    fn presentations() {
        let p = build_bb_presentation(&a23(), GammaSet::All, &[q(0)], 10).unwrap();
        assert_eq!(p.module_generators, vec![vec![0], vec![1]]);
        assert_eq!(p.relation_schemas.len(), 6);
        assert_eq!(p.relation_schemas[0].display(), "dx1 e([0]) = e([2])");
        let p = build_bb_presentation(&a23(), GammaSet::Interior, &[q(0)], 10).unwrap();
        assert_eq!(p.module_generators, vec![vec![1], vec![2]]);
        let std = PointConfiguration::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let p = build_bb_presentation(&std, GammaSet::All, &[q(0), q(0)], 4).unwrap();
        assert_eq!(p.module_generators, vec![vec![0, 0]]);
        assert!(matches!(
            build_bb_presentation(&a23(), GammaSet::Explicit(vec![vec![-1]]), &[q(0)], 4),
            Err(GkzError::OutsideCone { .. })
        ));
    }

    #[test]
    fn saturated_interior_is_a_single_shift() {
        let p = build_bb_presentation(&local_p2(), GammaSet::Interior, &[q(0), q(0), q(0)], 3).unwrap();
        assert_eq!(p.module_generators, vec![vec![0, 0, 1]]);
    }

    #[test]
    fn ordinary_ideals() {
        let i = build_ordinary_ideal(&a23(), &[q(0)]).unwrap();
        assert_eq!(i.display(), vec!["dx1^3 - dx2^2", "2*x1*dx1 + 3*x2*dx2"]);
        let i = build_ordinary_ideal(&local_p2(), &[q(0), q(0), q(0)]).unwrap();
        assert_eq!(i.generators.len(), 4);
        assert_eq!(i.generators[0].to_string(), "dx1*dx2*dx3 - dx4^3");
    }

    #[test]
    fn lambda_ideal_for_two_three() {
        let i = build_lambda_ideal(&a23(), &[q(0)]).unwrap();
        assert_eq!(
            i.display(),
            vec!["l^3*dx1^3 - l^2*dx2^2", "l^2*dl + l*x1*dx1 + l*x2*dx2 + l", "2*l*x1*dx1 + 3*l*x2*dx2"]
        );
        assert!(i.generators.iter().all(|g| g.in_rtilde()));
    }

    #[test]
    fn twisted_cubic_uses_a_generating_set() {
        let tc = PointConfiguration::new(2, vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]).unwrap();
        let i = build_ordinary_ideal(&tc, &[q(0), q(0)]).unwrap();
        assert_eq!(i.box_vectors.len(), 3);
        assert_eq!(kernel_lattice(&tc).kernel_basis.len(), 2);
    }

    #[test]
    fn intertwiners() {
        assert!(matches!(intertwiner(&a23(), &[q(0)], &[1], &[0], 10), Err(GkzError::NoRepresentation { .. })));
        let t = intertwiner(&a23(), &[q(0)], &[5], &[0], 10).unwrap();
        assert_eq!(t.b, vec![1, 1]);
        assert_eq!(t.d_level.to_string(), "dx1*dx2");
        let t = intertwiner(&gauss(), &[q(0), q(0)], &[2, 1], &[2, 1], 10).unwrap();
        assert_eq!(t.d_level, OperatorElement::one(3));
    }

    #[test]
    fn constant_series_is_annihilated() {
        for config in [a23(), gauss(), local_p2()] {
            let zero = vec![q(0); config.rank()];
            let ideal = build_ordinary_ideal(&config, &zero).unwrap();
            let one = LaurentSeries::monomial(vec![0; config.len()], q(1));
            let point = vec![qr(1, 3); config.len()];
            assert_eq!(residual(&ideal, &one, &point).unwrap(), q(0));
        }
    }

    #[test]
    fn central_binomial_residual_shrinks() {
        let ideal = build_ordinary_ideal(&gauss(), &[q(-1), q(-1)]).unwrap();
        let point = [q(1), q(1), qr(1, 100)];
        let mut last: Option<Q> = None;
        for r in 2..=6 {
            let s = gamma_series(&gauss(), &[-1, -1], &[0, -1, 0], r).unwrap();
            let res = residual(&ideal, &s.series, &point).unwrap();
            assert!(res > q(0));
            if let Some(prev) = last {
                assert!(res < prev);
            }
            last = Some(res);
        }
        // What survives is d2^2 of the k = 6 term, about C(12,6) 13 14 / 100^6.
        assert!(last.unwrap() < qr(1, 1_000_000));
    }

    #[test]
    fn residual_scales_linearly() {
        let ideal = build_ordinary_ideal(&gauss(), &[q(-1), q(-1)]).unwrap();
        let point = [q(1), q(1), qr(1, 100)];
        let s = gamma_series(&gauss(), &[-1, -1], &[0, -1, 0], 3).unwrap();
        let base = residual(&ideal, &s.series, &point).unwrap();
        let scaled = residual(&ideal, &s.scaled(&qr(-7, 3)).series, &point).unwrap();
        assert_eq!(scaled, base * qr(7, 3));
    }

    #[test]
    fn nonconstant_gauss_residual_shrinks_with_radius() {
        // Σ_{k<=r} C(2k,k) x1^k x2^{-1-2k} x3^k: the box operator telescopes and leaves
        // C(2r,r)(2r+1)(2r+2) x1^r x2^{-3-2r} x3^r; the Euler operators vanish exactly.
        let ideal = build_ordinary_ideal(&gauss(), &[q(-1), q(-1)]).unwrap();
        let point = [q(1), q(1), qr(1, 100)];
        let at = |r: u32| residual(&ideal, &gamma_series(&gauss(), &[-1, -1], &[0, -1, 0], r).unwrap().series, &point).unwrap();
        let rs: Vec<Q> = (2..=7).map(at).collect();
        for (i, r) in (2..=7u64).enumerate() {
            let leftover = Q::from_integer(crate::rational::binomial(2 * r, r)) * q((2 * r + 1) as i64 * (2 * r + 2) as i64);
            assert_eq!(rs[i], leftover * crate::rational::pow_q(&qr(1, 100), r as i64));
        }
        assert!(rs.windows(2).all(|w| w[1] < w[0]));
        assert!(rs[4] > qr(1, 100_000_000));
        assert!(rs[5] < qr(1, 100_000_000));
    }

    #[test]
    fn residual_rejects_lambda_level_and_poles() {
        let lam = build_lambda_ideal(&a23(), &[q(0)]).unwrap();
        let one = LaurentSeries::monomial(vec![0, 0], q(1));
        assert!(matches!(residual(&lam, &one, &[q(1), q(1)]), Err(GkzError::LambdaOperator)));
        let ideal = build_ordinary_ideal(&a23(), &[q(-1)]).unwrap();
        let s = gamma_series(&a23(), &[-1], &[1, -1], 2).unwrap();
        assert!(matches!(residual(&ideal, &s.series, &[q(1), q(0)]), Err(GkzError::Pole { .. })));
    }

    fn two_three_tuple(radius: u32) -> (BBGKZPresentation, BTreeMap<Vec<i64>, LaurentSeries>) {
        let pres = build_bb_presentation(&a23(), GammaSet::All, &[q(0)], 10).unwrap();
        // Φ_{-2} has homogeneity beta - c = 2.
        let psi = gamma_series(&a23(), &[2], &[4, -2], radius).unwrap().series;
        let tuple = shift_closure(&a23(), &psi, &[-2], &generators_and_shifts(&pres), 20).unwrap();
        (pres, tuple)
    }

    #[test]
    fn zero_tuple_passes() {
        let (pres, tuple) = two_three_tuple(2);
        let zero: BTreeMap<Vec<i64>, LaurentSeries> = tuple.keys().map(|c| (c.clone(), LaurentSeries::zero(2))).collect();
        let r = bb_solution_check(&pres, &zero, &[q(1), q(1)]).unwrap();
        assert_eq!(r.max_residual, q(0));
    }

    #[test]
    fn shift_closure_of_a_series_solves_the_system() {
        let (pres, tuple) = two_three_tuple(8);
        let r = bb_solution_check(&pres, &tuple, &[qr(1, 10), qr(1, 10)]).unwrap();
        assert!(r.max_residual < qr(1, 100_000_000), "{}", crate::rational::to_f64(&r.max_residual));
    }

    #[test]
    fn perturbed_tuple_is_caught() {
        let (pres, mut tuple) = two_three_tuple(8);
        let bump = LaurentSeries::monomial(vec![0, 0], qr(1, 1000));
        let e = tuple.get_mut(&vec![3]).unwrap();
        *e = e.add(&bump);
        let r = bb_solution_check(&pres, &tuple, &[qr(1, 10), qr(1, 10)]).unwrap();
        assert_eq!(r.max_residual, qr(1, 1000));
        assert_eq!(r.worst_relation(), Some("dx2 e([0]) = e([3])"));
        let mut missing = tuple.clone();
        missing.remove(&vec![4]);
        assert!(matches!(bb_solution_check(&pres, &missing, &[q(1), q(1)]), Err(GkzError::MissingEntry { .. })));
    }
}
