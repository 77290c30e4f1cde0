//! Buchberger's algorithm with sugar pair selection.

use super::order::MonomialOrder;
use super::polynomial::{Mono, Polynomial};
use crate::rational::Q;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(
        "resource limit reached after {processed_pairs} S-pairs (basis size {basis_size}, {pending_pairs} pairs pending)"
    )]
    ResourceLimit { processed_pairs: usize, basis_size: usize, pending_pairs: usize },
    #[error("polynomial has {found} variables, expected {expected}")]
    VariableCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_pairs: usize,
    pub max_basis: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_pairs: 200_000, max_basis: 5_000 }
    }
}

/// Terms sorted in increasing order, so the leading term is last.
#[derive(Debug, Clone)]
pub(crate) struct OPoly {
    pub terms: Vec<(Mono, Q)>,
    pub sugar: u32,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl OPoly {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Mono, Q)> = p.terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let sugar = p.total_degree().unwrap_or(0);
        OPoly { terms, sugar }
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn lm(&self) -> &Mono {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn lc(&self) -> &Q {
        &self.terms.last().expect("nonzero polynomial").1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.terms.last().map(|t| t.1.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }

    /// `self - c * x^shift * g`, merging two increasing term lists.
    fn sub_mul(&self, g: &OPoly, c: &Q, shift: &[u32], order: &MonomialOrder) -> Vec<(Mono, Q)> {
        let shifted = g.terms.iter().map(|(e, x)| (e.iter().zip(shift).map(|(a, b)| a + b).collect::<Mono>(), x * c));
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let which = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match which {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (e, x) = b.next().unwrap();
                    out.push((e, -x));
                }
                Ordering::Equal => {
                    let (e, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let v = x - y;
                    if !v.is_zero() {
                        out.push((e, v));
                    }
                }
            }
        }
        out
    }
}

/// Full reduction of `f` modulo `basis`.
pub(crate) fn reduce(f: &OPoly, basis: &[OPoly], order: &MonomialOrder) -> OPoly {
    let mut p = f.clone();
    let mut rem: Vec<(Mono, Q)> = Vec::new();
    while let Some((lm, lc)) = p.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let shift: Mono = lm.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = &lc / g.lc();
                p.terms = p.sub_mul(g, &c, &shift, order);
                p.sugar = p.sugar.max(g.sugar + deg(&shift));
            }
            None => {
                rem.push(p.terms.pop().unwrap());
            }
        }
    }
    rem.reverse();
    OPoly { terms: rem, sugar: p.sugar }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

fn s_poly(f: &OPoly, g: &OPoly, l: &[u32], order: &MonomialOrder) -> OPoly {
    let sf: Mono = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let sg: Mono = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let fs = OPoly {
        terms: f.terms.iter().map(|(e, c)| (e.iter().zip(&sf).map(|(a, b)| a + b).collect(), c / f.lc())).collect(),
        sugar: f.sugar + deg(&sf),
    };
    let c = g.lc().recip();
    let terms = fs.sub_mul(g, &c, &sg, order);
    OPoly { terms, sugar: fs.sugar.max(g.sugar + deg(&sg)) }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial.
pub fn groebner_basis(
    gens: &[Polynomial],
    order: &MonomialOrder,
    limits: GroebnerLimits,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let nvars = order.nvars();
    for g in gens {
        if g.nvars() != nvars {
            return Err(GroebnerError::VariableCount { expected: nvars, found: g.nvars() });
        }
    }
    let mut basis: Vec<OPoly> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;
    let unit = || vec![Polynomial::one(nvars)];

    let mut inputs: Vec<OPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| OPoly::from_poly(g, order)).collect();
    inputs.sort_by(|a, b| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(a.lm(), b.lm())));
    for f in inputs {
        let mut h = reduce(&f, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().iter().all(|&x| x == 0) {
            return Ok(unit());
        }
        insert(&mut basis, &mut alive, &mut pairs, h);
    }

    loop {
        if pairs.is_empty() {
            break;
        }
        if processed >= limits.max_pairs || basis.len() > limits.max_basis {
            return Err(GroebnerError::ResourceLimit {
                processed_pairs: processed,
                basis_size: basis.len(),
                pending_pairs: pairs.len(),
            });
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.sugar
                    .cmp(&pb.sugar)
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        processed += 1;
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        // Product criterion: coprime leading monomials.
        if fi.lm().iter().zip(fj.lm()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // Chain criterion: some k divides the lcm and both companion pairs are done.
        let pending = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            pairs.iter().any(|p| p.i == a && p.j == b)
        };
        let chain = (0..basis.len()).any(|k| {
            k != pair.i && k != pair.j && divides(basis[k].lm(), &pair.lcm) && !pending(pair.i, k) && !pending(pair.j, k)
        });
        if chain {
            continue;
        }
        let s = s_poly(fi, fj, &pair.lcm, order);
        let active: Vec<OPoly> = basis.iter().zip(&alive).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect();
        let mut h = reduce(&s, &active, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        h.sugar = h.sugar.max(pair.sugar);
        if h.lm().iter().all(|&x| x == 0) {
            return Ok(unit());
        }
        insert(&mut basis, &mut alive, &mut pairs, h);
    }

    Ok(interreduce(basis, nvars, order))
}

fn insert(basis: &mut Vec<OPoly>, alive: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: OPoly) {
    let k = basis.len();
    for (i, g) in basis.iter().enumerate() {
        let l = lcm(g.lm(), h.lm());
        let sugar = (g.sugar + deg(&l) - deg(g.lm())).max(h.sugar + deg(&l) - deg(h.lm()));
        pairs.push(Pair { i, j: k, lcm: l, sugar });
    }
    // Older elements whose leading monomial is now divisible stay for pair
    // bookkeeping but no longer serve as reducers.
    for (i, g) in basis.iter().enumerate() {
        if alive[i] && divides(h.lm(), g.lm()) {
            alive[i] = false;
        }
    }
    basis.push(h);
    alive.push(true);
}

fn interreduce(basis: Vec<OPoly>, nvars: usize, order: &MonomialOrder) -> Vec<Polynomial> {
    let mut minimal: Vec<OPoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in sorted {
        if !minimal.iter().any(|m| divides(m.lm(), g.lm())) {
            minimal.push(g);
        }
    }
    let mut out: Vec<OPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let lead = OPoly { terms: vec![minimal[i].terms.last().unwrap().clone()], sugar: 0 };
        let tail = OPoly { terms: minimal[i].terms[..minimal[i].terms.len() - 1].to_vec(), sugar: 0 };
        let mut r = reduce(&tail, &others, order);
        r.terms.push(lead.terms[0].clone());
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out.iter().map(|g| g.to_poly(nvars)).collect()
}

/// Normal form of `f` with respect to a Gröbner basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ob: Vec<OPoly> = basis.iter().filter(|g| !g.is_zero()).map(|g| OPoly::from_poly(g, order)).collect();
    reduce(&OPoly::from_poly(f, order), &ob, order).to_poly(f.nvars())
}
