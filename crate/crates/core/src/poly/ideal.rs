use super::groebner::{groebner_basis, normal_form, GroebnerError, GroebnerLimits};
use super::order::{MonomialOrder, OrderKind};
use super::polynomial::{Mono, Polynomial};
use crate::rational::Q;
use num_traits::One;
use serde::Serialize;

/// A generator list together with the order it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealBasis {
    pub nvars: usize,
    pub gens: Vec<Polynomial>,
    pub order: MonomialOrder,
    /// Set only when `gens` is the reduced Gröbner basis for `order`.
    pub reduced: bool,
}

impl IdealBasis {
    pub fn new(nvars: usize, gens: Vec<Polynomial>, order: MonomialOrder) -> Self {
        assert_eq!(order.nvars(), nvars, "order and ring disagree on the number of variables");
        IdealBasis { nvars, gens, order, reduced: false }
    }

    /// Normal form against the generators; an ideal-membership test once `reduced` holds.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.gens, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        debug_assert!(self.reduced, "membership needs a Gröbner basis");
        self.normal_form(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| !g.is_zero() && g.is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }
}

pub fn groebner(gens: &IdealBasis, order: &MonomialOrder) -> Result<IdealBasis, GroebnerError> {
    groebner_with_limits(gens, order, GroebnerLimits::default())
}

pub fn groebner_with_limits(
    gens: &IdealBasis,
    order: &MonomialOrder,
    limits: GroebnerLimits,
) -> Result<IdealBasis, GroebnerError> {
    let basis = groebner_basis(&gens.gens, order, limits)?;
    Ok(IdealBasis { nvars: gens.nvars, gens: basis, order: order.clone(), reduced: true })
}

/// `I : f^inf`, computed by adjoining `1 - t f` and eliminating `t`.
pub fn saturate(ideal: &IdealBasis, f: &Polynomial) -> Result<IdealBasis, GroebnerError> {
    assert!(!f.is_zero(), "saturation by the zero polynomial");
    let n = ideal.nvars;
    if f.is_constant() {
        return groebner(ideal, &ideal.order);
    }
    let mut gens: Vec<Polynomial> = ideal.gens.iter().map(|g| g.extend_vars(1)).collect();
    let mut t = vec![0u32; n + 1];
    t[n] = 1;
    let tf = &Polynomial::monomial(n + 1, t, Q::one()) * &f.extend_vars(1);
    gens.push(&Polynomial::one(n + 1) - &tf);
    let mut perm = vec![n];
    perm.extend(ideal.order.perm.iter().copied());
    let elim = MonomialOrder::with_perm(OrderKind::Block { split: 1 }, perm);
    let big = groebner_basis(&gens, &elim, GroebnerLimits::default())?;
    let kept: Vec<Polynomial> = big.iter().filter_map(|g| g.truncate_vars(n)).collect();
    groebner(&IdealBasis::new(n, kept, ideal.order.clone()), &ideal.order)
}

/// `x^{p+} - x^{p-}`.
pub fn binomial(p: &[i64]) -> Polynomial {
    let m = p.len();
    let plus: Mono = p.iter().map(|&x| x.max(0) as u32).collect();
    let minus: Mono = p.iter().map(|&x| (-x).max(0) as u32).collect();
    &Polynomial::monomial(m, plus, Q::one()) - &Polynomial::monomial(m, minus, Q::one())
}

/// Reads `x^u - x^v` back as the exponent difference `u - v`.
pub fn binomial_exponent(g: &Polynomial) -> Option<Vec<i64>> {
    let terms: Vec<(&Mono, &Q)> = g.terms().iter().collect();
    if terms.len() != 2 {
        return None;
    }
    let (pos, neg) = if terms[0].1.is_one() && *terms[1].1 == -Q::one() {
        (terms[0].0, terms[1].0)
    } else if terms[1].1.is_one() && *terms[0].1 == -Q::one() {
        (terms[1].0, terms[0].0)
    } else {
        return None;
    };
    Some(pos.iter().zip(neg).map(|(&a, &b)| a as i64 - b as i64).collect())
}

/// The lattice ideal `I_L = <x^{p+} - x^{p-} : p in L>` of the lattice spanned
/// by `kernel_basis`, as a reduced Gröbner basis in graded reverse lexicographic order.
pub fn lattice_ideal(kernel_basis: &[Vec<i64>], nvars: usize) -> Result<IdealBasis, GroebnerError> {
    let order = MonomialOrder::grevlex(nvars);
    let gens: Vec<Polynomial> = kernel_basis.iter().map(|p| binomial(p)).filter(|b| !b.is_zero()).collect();
    let mut ideal = groebner(&IdealBasis::new(nvars, gens, order.clone()), &order)?;
    if ideal.is_zero_ideal() {
        return Ok(ideal);
    }
    for i in 0..nvars {
        ideal = saturate(&ideal, &Polynomial::var(nvars, i))?;
    }
    Ok(ideal)
}

/// Product of all variables.
pub fn variable_product(nvars: usize) -> Polynomial {
    Polynomial::monomial(nvars, vec![1; nvars], Q::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(n, terms)
    }

    #[test]
    fn saturation_examples() {
        let o = MonomialOrder::grevlex(2);
        let xy = IdealBasis::new(2, vec![p(2, &[(1, &[1, 1])])], o.clone());
        let s = saturate(&xy, &Polynomial::var(2, 0)).unwrap();
        assert_eq!(s.gens, vec![Polynomial::var(2, 1)]);

        let x = IdealBasis::new(2, vec![Polynomial::var(2, 0)], o.clone());
        let s = saturate(&x, &Polynomial::var(2, 1)).unwrap();
        assert_eq!(s.gens, vec![Polynomial::var(2, 0)]);

        let x2 = IdealBasis::new(2, vec![p(2, &[(1, &[2, 0])])], o);
        assert!(saturate(&x2, &Polynomial::var(2, 0)).unwrap().is_unit());
    }

    #[test]
    fn lattice_ideals() {
        let i = lattice_ideal(&[vec![3, -2]], 2).unwrap();
        assert_eq!(i.gens, vec![p(2, &[(1, &[3, 0]), (-1, &[0, 2])])]);
        let i = lattice_ideal(&[vec![1, 1, 1, -3]], 4).unwrap();
        assert_eq!(i.gens, vec![p(4, &[(1, &[1, 1, 1, 0]), (-1, &[0, 0, 0, 3])])]);
    }

    #[test]
    fn twisted_cubic_needs_three_quadrics() {
        let i = lattice_ideal(&[vec![1, -2, 1, 0], vec![0, 1, -2, 1]], 4).unwrap();
        assert_eq!(i.gens.len(), 3);
        let expect = [
            p(4, &[(1, &[1, 0, 1, 0]), (-1, &[0, 2, 0, 0])]),
            p(4, &[(1, &[0, 1, 0, 1]), (-1, &[0, 0, 2, 0])]),
            p(4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]),
        ];
        for e in &expect {
            assert!(i.contains(e));
            assert_eq!(e.total_degree(), Some(2));
        }
        for g in &i.gens {
            assert_eq!(g.total_degree(), Some(2));
            assert!(binomial_exponent(g).is_some());
        }
    }

    #[test]
    fn binomial_round_trip() {
        let b = binomial(&[2, -1, 0]);
        assert_eq!(binomial_exponent(&b), Some(vec![2, -1, 0]));
        assert_eq!(binomial_exponent(&(-&b)), Some(vec![-2, 1, 0]));
    }
}
