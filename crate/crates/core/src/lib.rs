//! Antichains in the Bruhat order of classes `A(R,S)` of (0,1)-matrices.
//!
//! * [`matrix`]: packed matrices, Sigma tables, inversions, conjugate and
//!   complement, block composition.
//! * [`order`]: Bruhat and secondary Bruhat comparisons, interchanges,
//!   antichain certificates.
//! * [`class_enum`]: Gale–Ryser feasibility, enumeration, counting and the
//!   asymptotic size estimate.
//! * [`constructions`]: the even, odd, product, half-regular and improved
//!   half-regular antichains, each with independent size predictions.
//! * [`poset_metrics`]: inversion histograms, exact width and height, width
//!   bounds.
//! * [`cli`]: the `bruhat` command-line front end.

pub mod class_enum;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod io;
mod matching;
pub mod matrix;
pub mod order;
pub mod poset_metrics;

pub use error::{Error, Result};
pub use matrix::{BinaryMatrix, Margins, SigmaTable};
pub use order::{AntichainCertificate, OrderRelation, VerifyMode};
