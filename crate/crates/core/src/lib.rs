//! Exact computer algebra for better-behaved GKZ systems and the toric data
//! around them.

pub mod cohomology;
pub mod fan;
pub mod gkz;
pub mod intmat;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod tep;
pub mod weyl;
