//! Cohomology of smooth complete toric varieties and of `P(E ⊕ O)` over them,
//! the nilpotent operator `N = γ∪` with its graded structures, and quantum
//! D-module connections built from product tables.

mod bundle;
mod graded;
mod quantum;
mod ring;

pub use bundle::{bundle_cohomology, chern_classes, BundleCohomology};
pub use graded::{graded_structure, GradedPairing, GradedStructure, GramSymmetry};
pub use quantum::{
    flatness_check, qdm_connection, table_summary, AxiomCheck, AxiomReport, CurvatureComponent, FlatnessReport,
    FrameElement, InducedProduct, KernelAction, Param, PolyMatrix, QdmConnection, QuantumTable,
};
pub use ring::{cohomology_ring, coords_display, CohomRing, MAX_RAYS};

use crate::fan::FanError;
use crate::poly::GroebnerError;
use crate::tep::TepError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Tep(#[from] TepError),
    #[error("{rays} rays exceed the supported maximum of {max}")]
    TooManyRays { rays: usize, max: usize },
    #[error("top degree has dimension {top_dim}, expected 1")]
    NotPoincare { top_dim: usize },
    #[error("maximal cone {cone} integrates differently from the others")]
    InconsistentIntegration { cone: usize },
    #[error("Poincaré pairing is degenerate")]
    Degenerate,
    #[error("beta row {row} has {found} entries, expected {expected}")]
    BetaShape { row: usize, expected: usize, found: usize },
    #[error("Chern sequence must start with 1 and match the ring rank")]
    ChernSequence,
    #[error("quantum table: {message}")]
    Table { message: String },
    #[error("quantum table fails: {}", failures.join(", "))]
    Axioms { failures: Vec<String> },
    #[error("quantum table has no gamma class")]
    MissingGamma,
}
