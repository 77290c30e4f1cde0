use super::cone::{cone_facets, pairing, ConeDescription};
use super::{LatticeError, PointConfiguration};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemigroupSpec {
    All,
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub saturated: bool,
    pub witness: Option<Vec<i64>>,
    /// Number of lattice points of the cone inspected.
    pub checked: usize,
}

/// Largest coefficient any representation of `c` can use, when the cone is pointed.
fn conclusive_bound(cone: &ConeDescription, config: &PointConfiguration, c: &[i64]) -> Option<u64> {
    let u = cone.positive_functional()?;
    let uc = pairing(&u, c);
    if uc < 0 {
        return Some(0);
    }
    config
        .points()
        .iter()
        .map(|a| {
            let ua = pairing(&u, a);
            debug_assert!(ua > 0);
            (uc / ua) as u64
        })
        .max()
}

/// Some `b >= 0` with `sum b_j a_j = c` and every `b_j <= coef_bound`.
pub fn representation(config: &PointConfiguration, c: &[i64], coef_bound: u64) -> Option<Vec<u64>> {
    let cone = cone_facets(config);
    representation_in(config, &cone, c, coef_bound)
}

fn representation_in(
    config: &PointConfiguration,
    cone: &ConeDescription,
    c: &[i64],
    coef_bound: u64,
) -> Option<Vec<u64>> {
    let mut failed: HashSet<(usize, Vec<i64>)> = HashSet::new();
    let mut coeffs = vec![0u64; config.len()];
    if search(config, cone, 0, c.to_vec(), coef_bound, &mut coeffs, &mut failed) {
        Some(coeffs)
    } else {
        None
    }
}

fn search(
    config: &PointConfiguration,
    cone: &ConeDescription,
    j: usize,
    rem: Vec<i64>,
    bound: u64,
    coeffs: &mut [u64],
    failed: &mut HashSet<(usize, Vec<i64>)>,
) -> bool {
    if rem.iter().all(|&x| x == 0) {
        for x in coeffs[j..].iter_mut() {
            *x = 0;
        }
        return true;
    }
    if j == config.len() || !cone.contains(&rem) {
        return false;
    }
    let key = (j, rem);
    if failed.contains(&key) {
        return false;
    }
    let (_, rem) = key;
    let a = config.point(j);
    let mut cur = rem.clone();
    for k in 0..=bound {
        coeffs[j] = k;
        if search(config, cone, j + 1, cur.clone(), bound, coeffs, failed) {
            return true;
        }
        for (x, y) in cur.iter_mut().zip(a) {
            *x -= y;
        }
        if !cone.contains(&cur) {
            break;
        }
    }
    coeffs[j] = 0;
    failed.insert((j, rem));
    false
}

/// Membership of `c` in `Z_{>=0} A` with coefficients at most `bound`.
///
/// A negative answer is returned only when it is conclusive: either `c` lies
/// outside the cone, or the cone is pointed and `bound` covers every
/// coefficient a representation could need.
pub fn semigroup_membership(config: &PointConfiguration, c: &[i64], bound: u64) -> Result<bool, LatticeError> {
    config.check_vector(c)?;
    let cone = cone_facets(config);
    if !cone.contains(c) {
        return Ok(false);
    }
    if representation_in(config, &cone, c, bound).is_some() {
        return Ok(true);
    }
    match conclusive_bound(&cone, config, c) {
        Some(need) if need <= bound => Ok(false),
        _ => Err(LatticeError::BoundInsufficient { bound, target: c.to_vec() }),
    }
}

pub fn interior_test(config: &PointConfiguration, c: &[i64]) -> Result<bool, LatticeError> {
    config.check_vector(c)?;
    Ok(cone_facets(config).contains_interior(c))
}

/// Lattice points of `Z^n` with all coordinates in `[-bound, bound]`, ordered by
/// L1 norm, then lexicographically.
pub(crate) fn box_points(n: usize, bound: u64) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut cur = vec![-b; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                out.sort_by(|x, y| {
                    let l1 = |v: &Vec<i64>| v.iter().map(|t| t.abs()).sum::<i64>();
                    l1(x).cmp(&l1(y)).then_with(|| x.cmp(y))
                });
                return out;
            }
            k -= 1;
            if cur[k] < b {
                cur[k] += 1;
                for t in cur[k + 1..].iter_mut() {
                    *t = -b;
                }
                break;
            }
        }
    }
}

fn coefficient_bound(cone: &ConeDescription, config: &PointConfiguration, c: &[i64], fallback: u64) -> u64 {
    conclusive_bound(cone, config, c).unwrap_or(fallback)
}

/// Checks `K(A) = Z_{>=0} A` on all lattice points of the cone inside the box
/// `|c_i| <= bound`; the witness is the first failure in (L1, lex) order.
pub fn saturation_check(config: &PointConfiguration, bound: u64) -> Result<SaturationReport, LatticeError> {
    let cone = cone_facets(config);
    let mut checked = 0;
    for c in box_points(config.rank(), bound) {
        if !cone.contains(&c) {
            continue;
        }
        checked += 1;
        let cb = coefficient_bound(&cone, config, &c, bound);
        if representation_in(config, &cone, &c, cb).is_none() {
            if cone.pointed {
                return Ok(SaturationReport { saturated: false, witness: Some(c), checked });
            }
            return Err(LatticeError::BoundInsufficient { bound, target: c });
        }
    }
    Ok(SaturationReport { saturated: true, witness: None, checked })
}

/// Minimal generators `G` with `Gamma ∩ box ⊂ G + Z_{>=0} A`, where Gamma is
/// `K(A)` or its interior part.
pub fn semigroup_module_generators(
    config: &PointConfiguration,
    spec: SemigroupSpec,
    bound: u64,
) -> Result<Vec<Vec<i64>>, LatticeError> {
    let cone = cone_facets(config);
    let member = |c: &[i64]| match spec {
        SemigroupSpec::All => cone.contains(c),
        SemigroupSpec::Interior => cone.contains_interior(c),
    };
    let points: Vec<Vec<i64>> = box_points(config.rank(), bound).into_iter().filter(|c| member(c)).collect();
    if points.is_empty() {
        return Err(LatticeError::EmptyInterior);
    }
    let gens: Vec<Vec<i64>> = points
        .iter()
        .filter(|c| {
            config.points().iter().all(|a| {
                let shifted: Vec<i64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
                !member(&shifted)
            })
        })
        .cloned()
        .collect();
    for c in &points {
        let covered = gens.iter().any(|g| {
            let diff: Vec<i64> = c.iter().zip(g).map(|(x, y)| x - y).collect();
            cone.contains(&diff) && {
                let cb = coefficient_bound(&cone, config, &diff, bound);
                representation_in(config, &cone, &diff, cb).is_some()
            }
        });
        if !covered {
            return Err(LatticeError::BoundInsufficient { bound, target: c.clone() });
        }
    }
    Ok(gens)
}
