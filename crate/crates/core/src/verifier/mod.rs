//! Exact verification of the Yang–Baxter family identities.
//!
//! Every check returns a [`VerificationReport`]; a check passes exactly when
//! each of its residual operators is identically zero over the rationals.

mod checks;
mod report;
mod structure;
mod suite;

pub use checks::*;
pub use report::{Residual, VerificationReport};
pub use structure::{classify_structure, expected_structure, StructureClass, StructureTag};
pub use suite::{applicable_checks, run_check, run_checks, run_suite, CheckKind};
