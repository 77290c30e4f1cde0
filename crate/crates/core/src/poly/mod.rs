//! Multivariate polynomials over Q, Gröbner bases and saturation.

mod groebner;
mod ideal;
mod nondeg;
mod order;
mod polynomial;

pub use groebner::{groebner_basis, normal_form, GroebnerError, GroebnerLimits};
pub use ideal::{
    binomial, binomial_exponent, groebner, groebner_with_limits, lattice_ideal, saturate, variable_product,
    IdealBasis,
};
pub use nondeg::{face_is_nondegenerate, face_terms, nondegeneracy_check, FaceVerdict, NondegError, NondegReport};
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{default_names, Mono, Polynomial};
