//! Mixed models on `Cok(λN)` and `Ker(λN)` with their graded pairings.

use super::pairing::{specialize_pairing, NilpotentPairedSpace, PairingModel};
use super::TepError;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: i64,
    pub rank: usize,
    pub pairing: Option<PairingModel>,
}

/// Free module of rank `rank` with an increasing filtration recorded by the
/// ranks of `W̃_k` at its jumps, and one graded piece per jump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedTEPModel {
    pub rank: usize,
    pub filtration_ranks: BTreeMap<i64, usize>,
    pub pieces: Vec<GradedPiece>,
}

impl MixedTEPModel {
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().filter(|p| p.rank > 0).map(|p| (p.degree, p.rank)).collect()
    }

    fn from_pieces(pieces: Vec<GradedPiece>) -> Self {
        let mut pieces = pieces;
        pieces.sort_by_key(|p| p.degree);
        let mut filtration_ranks = BTreeMap::new();
        let mut acc = 0;
        for p in &pieces {
            acc += p.rank;
            filtration_ranks.insert(p.degree, acc);
        }
        MixedTEPModel { rank: acc, filtration_ranks, pieces }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedPair {
    pub cok: MixedTEPModel,
    pub ker: MixedTEPModel,
}

/// `Gr^{W̃}_k Cok ≅ PGr_{k-w}` for `k >= w` and `Gr^{W̃}_k Ker ≅ P'Gr_{k-w}` for `k <= w`,
/// each with the specialized pairing of weight `k`.
pub fn mixed_tep_assemble(nps: &NilpotentPairedSpace) -> Result<MixedPair, TepError> {
    let w = nps.pairing.weight;
    let sp = specialize_pairing(nps)?;
    let mut cok = Vec::new();
    let mut ker = Vec::new();
    for p in sp {
        let piece = GradedPiece { degree: w + p.degree, rank: p.pairing.rank(), pairing: Some(p.pairing) };
        if p.degree >= 0 {
            cok.push(piece.clone());
        }
        if p.degree <= 0 {
            ker.push(piece);
        }
    }
    Ok(MixedPair { cok: MixedTEPModel::from_pieces(cok), ker: MixedTEPModel::from_pieces(ker) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationItem {
    pub check: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub items: Vec<ValidationItem>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|i| !i.passed).map(|i| i.check.as_str()).collect()
    }
}

pub fn mixed_tep_validate(model: &MixedTEPModel) -> ValidationReport {
    let mut items = Vec::new();
    let mut push = |check: String, passed: bool| items.push(ValidationItem { check, passed });
    let first = model.filtration_ranks.values().next().copied();
    let last = model.filtration_ranks.values().next_back().copied();
    push(
        "filtration exhaustive".into(),
        model.rank == 0 || (first.is_some() && last == Some(model.rank)),
    );
    let increasing = model.filtration_ranks.values().zip(model.filtration_ranks.values().skip(1)).all(|(a, b)| a <= b);
    push("filtration increasing".into(), increasing);
    let mut prev = 0;
    for (k, &r) in &model.filtration_ranks {
        let piece = model.pieces.iter().find(|p| p.degree == *k);
        let free = piece.is_some_and(|p| r >= prev && p.rank == r - prev);
        push(format!("graded piece {k} free of expected rank"), free);
        prev = r;
    }
    for p in &model.pieces {
        match &p.pairing {
            None => push(format!("pairing on piece {} present", p.degree), false),
            Some(pm) => {
                push(format!("pairing on piece {} has weight {}", p.degree, p.degree), pm.weight == p.degree);
                push(format!("pairing on piece {} rank", p.degree), pm.rank() == p.rank);
                push(format!("pairing on piece {} symmetry", p.degree), pm.symmetry_holds());
                push(format!("pairing on piece {} nondegenerate", p.degree), pm.is_nondegenerate());
            }
        }
    }
    ValidationReport { items }
}
