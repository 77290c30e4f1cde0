//! Finite-rank models of filtered λ-modules with pairings: Rees modules,
//! weight-`w` pairings and twists, weight filtrations of nilpotents, and the
//! mixed structures on kernel and cokernel.

mod filtration;
mod laurent;
mod mixed;
mod pairing;
mod weight;

pub use filtration::{rees, unrees, FilteredSpace, ReesModule};
pub use laurent::{LMatrix, LaurentPoly};
pub use mixed::{
    mixed_tep_assemble, mixed_tep_validate, GradedPiece, MixedPair, MixedTEPModel, ValidationItem, ValidationReport,
};
pub use pairing::{
    chain_form, conjugate, pairing_from_parts, primitive_ranks, specialize_pairing, specialize_via_right,
    NilpotentPairedSpace, PairingModel, SpecializedPairing,
};
pub use weight::{primitive_decomposition, weight_filtration, JordanChain, PrimitiveDecomposition, WeightFiltration};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TepError {
    #[error("dimension mismatch (expected {expected}): {context}")]
    Dimension { expected: usize, context: String },
    #[error("filtration decreases at step {index}")]
    NotIncreasing { index: i64 },
    #[error("filtration does not reach the whole space")]
    NotExhaustive,
    #[error("Rees generators do not form a basis")]
    NotFree,
    #[error("operator is not nilpotent: its {power}-th power is nonzero")]
    NotNilpotent { power: usize },
    #[error("pairing violates the weight-{weight} symmetry law")]
    SymmetryLaw { weight: i64 },
    #[error("pairing is degenerate")]
    Degenerate,
    #[error("nilpotent operator is not compatible with the pairing")]
    Compatibility,
}
