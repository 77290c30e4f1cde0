//! Monodromy weight filtration of a nilpotent matrix and its primitive parts.

use super::filtration::FilteredSpace;
use super::TepError;
use crate::linalg::{extend_basis, image_of, span_basis, subspace_contains, subspace_sum, QMatrix};
use crate::rational::Q;
use std::collections::BTreeMap;

/// `top, N top, ..., N^{length-1} top` with `N^length top = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanChain {
    pub top: Vec<Q>,
    pub length: usize,
}

/// Weight filtration centered at 0, recorded through an adapted Jordan basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    pub dim: usize,
    pub n: QMatrix,
    pub chains: Vec<JordanChain>,
}

impl WeightFiltration {
    /// Adapted basis: `N^i top` of a chain of length `s` has weight `s - 1 - 2i`.
    pub fn weighted_basis(&self) -> Vec<(i64, Vec<Q>)> {
        let mut out = Vec::new();
        for c in &self.chains {
            let mut v = c.top.clone();
            for i in 0..c.length {
                out.push((c.length as i64 - 1 - 2 * i as i64, v.clone()));
                v = self.n.mul_vec(&v);
            }
        }
        out
    }

    pub fn step(&self, k: i64) -> Vec<Vec<Q>> {
        let vs: Vec<Vec<Q>> = self.weighted_basis().into_iter().filter(|(w, _)| *w <= k).map(|(_, v)| v).collect();
        span_basis(&vs, self.dim)
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (w, _) in self.weighted_basis() {
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    /// Block sizes, largest first.
    pub fn jordan_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.chains.iter().map(|c| c.length).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn max_weight(&self) -> i64 {
        self.chains.iter().map(|c| c.length as i64 - 1).max().unwrap_or(0)
    }

    /// `N W_k ⊆ W_{k-2}` for all `k`, and `N^k` induces `Gr_k ≅ Gr_{-k}` for `k >= 0`.
    pub fn satisfies_characterization(&self) -> bool {
        let d = self.dim;
        let top = d as i64 + 1;
        for k in -top..=top {
            if !subspace_contains(&self.step(k - 2), &image_of(&self.n, &self.step(k))) {
                return false;
            }
        }
        for k in 0..=top {
            let gr = self.step(k).len() - self.step(k - 1).len();
            let below = self.step(-k - 1);
            let img = subspace_sum(&image_of(&self.n.pow(k as usize), &self.step(k)), &below, d);
            if !subspace_contains(&self.step(-k), &img)
                || img.len() - below.len() != gr
                || self.step(-k).len() - below.len() != gr
            {
                return false;
            }
        }
        true
    }

    pub fn to_filtered_space(&self) -> FilteredSpace {
        let steps = self.graded_dims().keys().map(|&k| (k, self.step(k))).collect();
        FilteredSpace::new(self.dim, steps).expect("weight filtration is exhaustive")
    }
}

pub fn weight_filtration(n: &QMatrix) -> Result<WeightFiltration, TepError> {
    if !n.is_square() {
        return Err(TepError::Dimension { expected: n.nrows(), context: "nilpotent operator must be square".into() });
    }
    let d = n.nrows();
    if !n.pow(d).is_zero() {
        return Err(TepError::NotNilpotent { power: d });
    }
    // kernels[s] = Ker N^s.
    let mut kernels: Vec<Vec<Vec<Q>>> = vec![Vec::new()];
    let mut p = QMatrix::identity(d);
    loop {
        p = p.mul(n);
        let k = p.nullspace();
        let full = k.len() == d;
        kernels.push(k);
        if full {
            break;
        }
    }
    let longest = kernels.len() - 1;
    let mut chains = Vec::new();
    for s in (1..=longest).rev() {
        let mut base = kernels[s - 1].clone();
        if s < longest {
            base.extend(image_of(n, &kernels[s + 1]));
        }
        for top in extend_basis(&base, &kernels[s]) {
            chains.push(JordanChain { top, length: s });
        }
    }
    Ok(WeightFiltration { dim: d, n: n.clone(), chains })
}

/// Representatives of `PGr_k` (`k >= 0`) and `P'Gr_{-k} = N^k PGr_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub primitive: BTreeMap<usize, Vec<Vec<Q>>>,
    /// Keyed by `k`, holding representatives of `P'Gr_{-k}`.
    pub dual_primitive: BTreeMap<usize, Vec<Vec<Q>>>,
}

impl PrimitiveDecomposition {
    pub fn rank(&self, k: usize) -> usize {
        self.primitive.get(&k).map_or(0, Vec::len)
    }
}

pub fn primitive_decomposition(w: &WeightFiltration) -> PrimitiveDecomposition {
    let mut primitive: BTreeMap<usize, Vec<Vec<Q>>> = BTreeMap::new();
    let mut dual_primitive: BTreeMap<usize, Vec<Vec<Q>>> = BTreeMap::new();
    for c in &w.chains {
        let k = c.length - 1;
        primitive.entry(k).or_default().push(c.top.clone());
        dual_primitive.entry(k).or_default().push(w.n.pow(k).mul_vec(&c.top));
    }
    PrimitiveDecomposition { primitive, dual_primitive }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::{span_dim, subspace_contains, subspace_eq, subspace_intersection, subspace_sum};
    use crate::rational::q;
    use proptest::prelude::*;

    /// Direct sum of Jordan blocks `N e_i = e_{i+1}` inside each block.
    pub(crate) fn jordan(blocks: &[usize]) -> QMatrix {
        let d: usize = blocks.iter().sum();
        let mut m = QMatrix::zeros(d, d);
        let mut start = 0;
        for &b in blocks {
            for i in 0..b.saturating_sub(1) {
                m[(start + i + 1, start + i)] = q(1);
            }
            start += b;
        }
        m
    }

    /// `W_k = Σ_{j >= max(0,-k)} Ker N^{k+1+j} ∩ Im N^j`.
    fn oracle_steps(n: &QMatrix, range: std::ops::RangeInclusive<i64>) -> BTreeMap<i64, Vec<Vec<Q>>> {
        let d = n.nrows();
        let powers: Vec<QMatrix> = (0..=2 * d + 1).scan(QMatrix::identity(d), |p, _| {
            let cur = p.clone();
            *p = p.mul(n);
            Some(cur)
        }).collect();
        let kernels: Vec<Vec<Vec<Q>>> = powers.iter().map(QMatrix::nullspace).collect();
        let images: Vec<Vec<Vec<Q>>> = powers.iter().map(crate::linalg::column_space).collect();
        range
            .map(|k| {
                let mut acc: Vec<Vec<Q>> = Vec::new();
                for j in (-k).max(0)..=d as i64 {
                    let e = k + 1 + j;
                    if e <= 0 {
                        continue;
                    }
                    let e = (e as usize).min(d);
                    let piece = subspace_intersection(&kernels[e], &images[j as usize], d);
                    acc = subspace_sum(&acc, &piece, d);
                }
                (k, acc)
            })
            .collect()
    }

    fn check_characterization(n: &QMatrix, w: &WeightFiltration) -> Result<(), TestCaseError> {
        let d = n.nrows();
        let top = d as i64;
        let steps: BTreeMap<i64, Vec<Vec<Q>>> = (-top - 3..=top).map(|k| (k, w.step(k))).collect();
        let oracle = oracle_steps(n, -top..=top);
        prop_assert_eq!(span_dim(&steps[&top]), d);
        prop_assert!(steps[&(-top - 1)].is_empty());
        for k in -top..=top {
            prop_assert!(subspace_contains(&steps[&(k - 2)], &image_of(n, &steps[&k])));
            prop_assert!(subspace_eq(&steps[&k], &oracle[&k]));
        }
        for k in 0..=top {
            let gr = steps[&k].len() - steps[&(k - 1)].len();
            let below = &steps[&(-k - 1)];
            let nk = n.pow(k as usize);
            let image = subspace_sum(&image_of(&nk, &steps[&k]), below, d);
            prop_assert!(subspace_contains(&steps[&(-k)], &image));
            prop_assert_eq!(image.len() - below.len(), gr);
            prop_assert_eq!(steps[&(-k)].len() - below.len(), gr);
        }
        Ok(())
    }

    #[test]
    fn zero_operator() {
        let w = weight_filtration(&QMatrix::zeros(3, 3)).unwrap();
        assert!(w.step(-1).is_empty());
        assert_eq!(w.step(0).len(), 3);
        let p = primitive_decomposition(&w);
        assert_eq!(p.rank(0), 3);
    }

    #[test]
    fn jordan_blocks() {
        let w = weight_filtration(&jordan(&[2])).unwrap();
        assert_eq!(w.graded_dims(), BTreeMap::from([(-1, 1), (1, 1)]));
        let w = weight_filtration(&jordan(&[3])).unwrap();
        let p = primitive_decomposition(&w);
        assert_eq!((p.rank(2), p.rank(0)), (1, 0));
        assert_eq!(p.dual_primitive[&2].len(), 1);
        let w = weight_filtration(&jordan(&[4, 1, 1])).unwrap();
        assert_eq!(w.graded_dims(), BTreeMap::from([(-3, 1), (-1, 1), (0, 2), (1, 1), (3, 1)]));
        assert_eq!(w.jordan_type(), vec![4, 1, 1]);
    }

    #[test]
    fn shifted_filtration_fails_characterization() {
        let mut w = weight_filtration(&jordan(&[3])).unwrap();
        w.chains[0].length = 2;
        assert!(!w.satisfies_characterization());
    }

    #[test]
    fn rejects_non_nilpotent() {
        let m = QMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(weight_filtration(&m), Err(TepError::NotNilpotent { power: 2 })));
    }

    fn arb_nilpotent() -> impl Strategy<Value = QMatrix> {
        (proptest::collection::vec(1usize..=4, 1..=4), proptest::collection::vec(-2i64..=2, 64)).prop_filter_map(
            "dimension at most 8 with invertible conjugator",
            |(blocks, entries)| {
                let d: usize = blocks.iter().sum();
                if d > 8 {
                    return None;
                }
                let mut s = QMatrix::identity(d);
                for i in 0..d {
                    for j in 0..d {
                        if i < j {
                            s[(i, j)] = q(entries[i * 8 + j]);
                        } else if i > j {
                            s[(i, j)] = q(entries[i * 8 + j] / 2);
                        }
                    }
                }
                let inv = s.inverse()?;
                Some(s.mul(&jordan(&blocks)).mul(&inv))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn characterization_holds(n in arb_nilpotent()) {
            let w = weight_filtration(&n).unwrap();
            check_characterization(&n, &w)?;
            prop_assert!(w.satisfies_characterization());
        }

        #[test]
        fn lefschetz_and_primitive_parts(n in arb_nilpotent()) {
            let w = weight_filtration(&n).unwrap();
            let p = primitive_decomposition(&w);
            let gr = w.graded_dims();
            let top = w.max_weight();
            let d = n.nrows();
            for k in 0..=top {
                let lef: usize = (0..).map(|j| k + 2 * j).take_while(|&x| x <= top).map(|x| p.rank(x as usize)).sum();
                prop_assert_eq!(gr.get(&k).copied().unwrap_or(0), lef);
                // Primitive part from the filtration alone:
                // {v in W_k : N^{k+1} v in W_{-k-3}} modulo W_{k-1}.
                let nk1 = n.pow(k as usize + 1);
                let target = w.step(-k - 3);
                let s = crate::linalg::preimage_within(&nk1, &w.step(k), &target);
                let s_mod = subspace_sum(&s, &w.step(k - 1), d);
                prop_assert_eq!(s_mod.len() - w.step(k - 1).len(), p.rank(k as usize));
                for v in p.primitive.get(&(k as usize)).into_iter().flatten() {
                    prop_assert!(crate::linalg::in_span(&s_mod, v));
                }
            }
        }
    }
}
