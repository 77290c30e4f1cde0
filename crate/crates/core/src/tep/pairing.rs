//! Pairings of weight `w` on free `Q[λ]`-modules, nilpotent endomorphisms
//! compatible with them, and the specialized pairings on primitive parts.

use super::laurent::{LMatrix, LaurentPoly};
use super::weight::{primitive_decomposition, weight_filtration, PrimitiveDecomposition, WeightFiltration};
use super::TepError;
use crate::linalg::QMatrix;
use crate::rational::{q, Q};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `M_{ab} = P(e_a, j* e_b)`, subject to `M(-λ) = (-1)^w M^T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingModel {
    pub weight: i64,
    pub matrix: LMatrix,
}

fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

impl PairingModel {
    pub fn new(weight: i64, matrix: LMatrix) -> Result<Self, TepError> {
        let pm = PairingModel { weight, matrix };
        if pm.matrix.nrows() != pm.matrix.ncols() {
            return Err(TepError::Dimension { expected: pm.matrix.nrows(), context: "pairing matrix must be square".into() });
        }
        if !pm.symmetry_holds() {
            return Err(TepError::SymmetryLaw { weight });
        }
        if !pm.is_nondegenerate() {
            return Err(TepError::Degenerate);
        }
        Ok(pm)
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    /// `j*P = (-1)^w P ∘ exchange`, i.e. `M(-λ) = (-1)^w M^T`.
    pub fn symmetry_holds(&self) -> bool {
        self.matrix.reflect() == self.matrix.transpose().scale(&LaurentPoly::constant(sign(self.weight)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.matrix.det().is_zero()
    }

    /// `P^{(a)}` of weight `w + 2a`: the matrix times `(-1)^a λ^{-2a}`.
    pub fn twist(&self, a: i64) -> Self {
        PairingModel {
            weight: self.weight + 2 * a,
            matrix: self.matrix.scale(&LaurentPoly::monomial(-2 * a, sign(a))),
        }
    }
}

/// A pairing model with `N = λ^{-1} N_0`, `N_0` a constant nilpotent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentPairedSpace {
    pub pairing: PairingModel,
    pub n0: QMatrix,
}

impl NilpotentPairedSpace {
    pub fn new(pairing: PairingModel, n0: QMatrix) -> Result<Self, TepError> {
        if n0.nrows() != pairing.rank() || n0.ncols() != pairing.rank() {
            return Err(TepError::Dimension { expected: pairing.rank(), context: "nilpotent operator".into() });
        }
        let nps = NilpotentPairedSpace { pairing, n0 };
        if !nps.compatibility_holds() {
            return Err(TepError::Compatibility);
        }
        weight_filtration(&nps.n0)?;
        Ok(nps)
    }

    /// `P(a, j*(N b)) = -P(N a, j* b)`; with `N = λ^{-1}N_0` this reads `M N_0 = N_0^T M`.
    pub fn compatibility_holds(&self) -> bool {
        let m = &self.pairing.matrix;
        m.mul_q(&self.n0) == LMatrix::q_mul(&self.n0.transpose(), m)
    }

    pub fn weight_filtration(&self) -> WeightFiltration {
        weight_filtration(&self.n0).expect("nilpotency checked at construction")
    }

    pub fn primitive(&self) -> PrimitiveDecomposition {
        primitive_decomposition(&self.weight_filtration())
    }

    pub fn twist(&self, a: i64) -> Self {
        NilpotentPairedSpace { pairing: self.pairing.twist(a), n0: self.n0.clone() }
    }
}

/// Graded pairing on `PGr_k` (`degree = k >= 0`) or `P'Gr_k` (`degree = k < 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedPairing {
    pub degree: i64,
    pub representatives: Vec<Vec<Q>>,
    pub pairing: PairingModel,
}

fn gram(m: &LMatrix, left: &[Vec<Q>], right: &[Vec<Q>]) -> LMatrix {
    let l = QMatrix::from_cols(left, m.nrows());
    let r = QMatrix::from_cols(right, m.nrows());
    LMatrix::q_mul(&l.transpose(), &m.mul_q(&r))
}

/// `sp(P)_{w+k}` for every nonzero primitive piece.
///
/// For `k >= 0`, on tops `a, b` of chains of length `k + 1`:
/// `P(N^k a, j* b) = λ^{-k} (N_0^k a)^T M b`.
/// For `k = -κ < 0`, on `N^κ a, N^κ b`: `(-1)^κ λ^{κ} (N_0^κ a)^T M b`.
pub fn specialize_pairing(nps: &NilpotentPairedSpace) -> Result<Vec<SpecializedPairing>, TepError> {
    let prim = nps.primitive();
    let m = &nps.pairing.matrix;
    let w = nps.pairing.weight;
    let mut out = Vec::new();
    for (&k, tops) in &prim.primitive {
        let nk = nps.n0.pow(k);
        let shifted: Vec<Vec<Q>> = tops.iter().map(|t| nk.mul_vec(t)).collect();
        let ki = k as i64;
        let pos = gram(m, &shifted, tops).shift(-ki);
        out.push(SpecializedPairing {
            degree: ki,
            representatives: tops.clone(),
            pairing: PairingModel::new(w + ki, pos)?,
        });
        if k > 0 {
            let neg = gram(m, &shifted, tops).shift(ki).scale(&LaurentPoly::constant(sign(ki)));
            out.push(SpecializedPairing {
                degree: -ki,
                representatives: prim.dual_primitive[&k].clone(),
                pairing: PairingModel::new(w - ki, neg)?,
            });
        }
    }
    out.sort_by_key(|p| -p.degree);
    Ok(out)
}

/// Same pairing on `PGr_k` built through `(id × j*N^k)`: `(-λ)^{-k} a^T M N_0^k b`.
pub fn specialize_via_right(nps: &NilpotentPairedSpace, k: usize) -> Option<LMatrix> {
    let prim = nps.primitive();
    let tops = prim.primitive.get(&k)?;
    let nk = nps.n0.pow(k);
    let shifted: Vec<Vec<Q>> = tops.iter().map(|t| nk.mul_vec(t)).collect();
    let ki = k as i64;
    Some(gram(&nps.pairing.matrix, tops, &shifted).scale(&LaurentPoly::monomial(-ki, sign(ki))))
}

/// Building block for compatible spaces: Jordan chains of the given lengths with
/// `G(N^i t_a, N^j t_b) = h_{ab}(i + j)` when `i + j < min(s_a, s_b)` and 0 otherwise.
/// `hankel[a][b]` lists `h_{ab}(0), h_{ab}(1), ...`. The result is `(N_0, G)` in the
/// basis `N^i t_a`.
pub fn chain_form(lengths: &[usize], hankel: &[Vec<Vec<Q>>]) -> (QMatrix, QMatrix) {
    let d: usize = lengths.iter().sum();
    let offsets: Vec<usize> = lengths.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    }).collect();
    let mut n0 = QMatrix::zeros(d, d);
    let mut g = QMatrix::zeros(d, d);
    for (a, &sa) in lengths.iter().enumerate() {
        for i in 0..sa.saturating_sub(1) {
            n0[(offsets[a] + i + 1, offsets[a] + i)] = q(1);
        }
        for (b, &sb) in lengths.iter().enumerate() {
            for i in 0..sa {
                for j in 0..sb {
                    if i + j < sa.min(sb) {
                        if let Some(h) = hankel[a][b].get(i + j) {
                            g[(offsets[a] + i, offsets[b] + j)] = h.clone();
                        }
                    }
                }
            }
        }
    }
    (n0, g)
}

/// Pairing matrix `Σ_k λ^k C_k` with the given coefficient matrices.
pub fn pairing_from_parts(weight: i64, parts: &[(i64, QMatrix)]) -> Result<PairingModel, TepError> {
    PairingModel::new(weight, LMatrix::from_coefficients(parts))
}

/// Change of basis `x = S y`: `N_0 ↦ S^{-1} N_0 S`, `M ↦ S^T M S`.
pub fn conjugate(nps: &NilpotentPairedSpace, s: &QMatrix) -> Option<NilpotentPairedSpace> {
    let inv = s.inverse()?;
    let m = LMatrix::q_mul(&s.transpose(), &nps.pairing.matrix.mul_q(s));
    Some(NilpotentPairedSpace {
        pairing: PairingModel { weight: nps.pairing.weight, matrix: m },
        n0: inv.mul(&nps.n0).mul(s),
    })
}

/// Ranks of the primitive pieces keyed by degree.
pub fn primitive_ranks(nps: &NilpotentPairedSpace) -> BTreeMap<i64, usize> {
    let p = nps.primitive();
    let mut out = BTreeMap::new();
    for (&k, v) in &p.primitive {
        out.insert(k as i64, v.len());
        if k > 0 {
            out.insert(-(k as i64), v.len());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scalar(w: i64, k: i64, c: Q) -> PairingModel {
        PairingModel::new(w, LMatrix::from_entries(vec![vec![LaurentPoly::monomial(k, c)]])).unwrap()
    }

    #[test]
    fn twist_examples() {
        let p = scalar(0, 0, q(1));
        assert_eq!(p.twist(0), p);
        let t = p.twist(1);
        assert_eq!(t.weight, 2);
        assert_eq!(t.matrix.get(0, 0), &LaurentPoly::monomial(-2, q(-1)));
        assert!(t.symmetry_holds());
        assert_eq!(t.twist(-1), p);
    }

    #[test]
    fn symmetry_law_rejects_wrong_parity() {
        let bad = LMatrix::from_entries(vec![vec![LaurentPoly::monomial(1, q(1))]]);
        assert!(matches!(PairingModel::new(0, bad), Err(TepError::SymmetryLaw { weight: 0 })));
    }

    #[test]
    fn trivial_nilpotent_restricts() {
        let g = QMatrix::from_i64(&[vec![2, 1], vec![1, 1]]);
        let pm = PairingModel::new(0, LMatrix::from_q(&g, 0)).unwrap();
        let nps = NilpotentPairedSpace::new(pm.clone(), QMatrix::zeros(2, 2)).unwrap();
        let sp = specialize_pairing(&nps).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].degree, 0);
        assert_eq!(sp[0].pairing, pm);
    }

    #[test]
    fn single_block_of_size_two() {
        // G(e1, e2) = G(e2, e1) = 1 with N e1 = e2.
        let (n0, g) = chain_form(&[2], &[vec![vec![q(0), q(1)]]]);
        assert_eq!(g, QMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));
        let nps = NilpotentPairedSpace::new(PairingModel::new(0, LMatrix::from_q(&g, 0)).unwrap(), n0).unwrap();
        let sp = specialize_pairing(&nps).unwrap();
        let top = sp.iter().find(|p| p.degree == 1).unwrap();
        assert_eq!(top.pairing.weight, 1);
        assert_eq!(top.pairing.matrix.get(0, 0), &LaurentPoly::monomial(-1, q(1)));
        assert!(top.pairing.symmetry_holds());
        // P(a, j*(N a)) = -P(N a, j* a).
        let right = specialize_via_right(&nps, 1).unwrap();
        assert_eq!(right, top.pairing.matrix.scale(&LaurentPoly::constant(q(-1))));
    }

    #[test]
    fn incompatible_nilpotent_rejected() {
        let g = QMatrix::identity(2);
        let n0 = QMatrix::from_i64(&[vec![0, 0], vec![1, 0]]);
        let pm = PairingModel::new(0, LMatrix::from_q(&g, 0)).unwrap();
        assert!(matches!(NilpotentPairedSpace::new(pm, n0), Err(TepError::Compatibility)));
    }

    fn random_space(
        lengths: Vec<usize>,
        h: Vec<i64>,
        skew: Vec<i64>,
        conj: Vec<i64>,
        w: i64,
    ) -> Option<NilpotentPairedSpace> {
        let c = lengths.len();
        let d: usize = lengths.iter().sum();
        let sym = |a: usize, b: usize, t: usize| q(h[(a.min(b) * 4 + a.max(b)) * 4 + t]);
        let anti = |a: usize, b: usize, t: usize| {
            let v = q(skew[(a.min(b) * 4 + a.max(b)) * 4 + t]);
            if a < b { v } else if a > b { -v } else { q(0) }
        };
        let hk: Vec<Vec<Vec<Q>>> = (0..c).map(|a| (0..c).map(|b| (0..4).map(|t| sym(a, b, t)).collect()).collect()).collect();
        let hs: Vec<Vec<Vec<Q>>> = (0..c).map(|a| (0..c).map(|b| (0..4).map(|t| anti(a, b, t)).collect()).collect()).collect();
        let (n0, g) = chain_form(&lengths, &hk);
        let (_, a) = chain_form(&lengths, &hs);
        // Weight parity picks which of the two forms sits in even λ-degree.
        let s = w.rem_euclid(2);
        let (even, odd) = if s == 0 { (g, a) } else { (a, g) };
        let pm = PairingModel::new(w, LMatrix::from_coefficients(&[(w - s, even), (w - s + 1, odd)])).ok()?;
        let base = NilpotentPairedSpace::new(pm, n0).ok()?;
        let mut sm = QMatrix::identity(d);
        for i in 0..d {
            for j in (i + 1)..d {
                sm[(i, j)] = q(conj[i * 8 + j]);
            }
        }
        let out = conjugate(&base, &sm)?;
        specialize_pairing(&out).ok()?;
        Some(out)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn twist_law(
            w in -4i64..=4,
            a in -3i64..=3,
            b in -3i64..=3,
            c in proptest::collection::vec(-3i64..=3, 72),
            r in 1usize..=6,
        ) {
            // Symmetric part in λ-degree w, skew part in degree w + 1.
            let mut sym = QMatrix::zeros(r, r);
            let mut skew = QMatrix::zeros(r, r);
            for i in 0..r {
                for j in i..r {
                    sym[(i, j)] = q(c[i * 6 + j]);
                    sym[(j, i)] = q(c[i * 6 + j]);
                    if i < j {
                        skew[(i, j)] = q(c[36 + i * 6 + j]);
                        skew[(j, i)] = -q(c[36 + i * 6 + j]);
                    }
                }
            }
            let pm = PairingModel { weight: w, matrix: LMatrix::from_coefficients(&[(w, sym), (w + 1, skew)]) };
            prop_assert!(pm.symmetry_holds());
            prop_assume!(pm.is_nondegenerate());
            let t = pm.twist(a);
            prop_assert!(t.symmetry_holds());
            prop_assert_eq!(t.weight, w + 2 * a);
            prop_assert_eq!(&t.matrix, &pm.matrix.scale(&LaurentPoly::monomial(-2 * a, sign(a))));
            prop_assert_eq!(t.twist(b), pm.twist(a + b));
        }

        #[test]
        fn specialized_pairings_obey_sign_laws(
            lengths in proptest::collection::vec(1usize..=4, 1..=3),
            h in proptest::collection::vec(-3i64..=3, 64),
            skew in proptest::collection::vec(-2i64..=2, 64),
            conj in proptest::collection::vec(-1i64..=1, 64),
            w in -3i64..=3,
            a in -2i64..=2,
        ) {
            prop_assume!(lengths.iter().sum::<usize>() <= 8);
            let nps = random_space(lengths, h, skew, conj, w);
            prop_assume!(nps.is_some());
            let nps = nps.unwrap();
            let sp = specialize_pairing(&nps).unwrap();
            let ranks = primitive_ranks(&nps);
            for p in &sp {
                prop_assert_eq!(p.pairing.weight, w + p.degree);
                prop_assert!(p.pairing.symmetry_holds());
                prop_assert!(p.pairing.is_nondegenerate());
                prop_assert_eq!(p.pairing.rank(), ranks[&p.degree]);
                if p.degree >= 0 {
                    let right = specialize_via_right(&nps, p.degree as usize).unwrap();
                    prop_assert_eq!(right, p.pairing.matrix.scale(&LaurentPoly::constant(sign(p.degree))));
                }
            }
            let twisted = specialize_pairing(&nps.twist(a)).unwrap();
            prop_assert_eq!(twisted.len(), sp.len());
            for (t, p) in twisted.iter().zip(&sp) {
                prop_assert_eq!(&t.pairing, &p.pairing.twist(a));
            }
        }
    }
}
