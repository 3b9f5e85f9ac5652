//! dehnkit: link invariants from planar diagram codes.
//!
//! A PD code is parsed into a plane link diagram; the complementary regions
//! are checkerboard shaded and turned into a presentation of the link group
//! whose Fox Jacobian recovers the reduced Goeritz matrix under 2-reduction.
//! For special diagrams the same machinery yields the Seifert matrices, and
//! tau-specialization gives Alexander matrices and polynomials. Every
//! invariant is computed by two independent routes so results self-validate.

pub mod algebra;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod matrices;
pub mod presentation;
pub mod render;
pub mod report;

pub use diagram::analysis::Analyzed;
pub use error::{ComputeError, Error, PdError};
