//! Time-optimal (brachistochrone) control on SU(3).
//!
//! The crate builds the qutrit control problem with a constant constraint,
//! evaluates its closed-form propagator factorizations, and checks every
//! matrix identity of the construction against an independent numerical
//! oracle. The [`ledger`] module assembles those checks into a
//! machine-readable report.

pub mod brachistochrone;
pub mod classify;
pub mod cli;
pub mod degeneracy;
pub mod error;
pub mod floquet;
pub mod ledger;
pub mod linalg;
pub mod oracle;
pub mod propagators;
pub mod su4;
pub mod trajectory;

pub use brachistochrone::{BrachistochroneProblem, ControlFields, Convention};
pub use error::{Error, Result};
pub use ledger::{ClaimResult, ClaimStatus, LedgerConfig, LedgerReport};
pub use linalg::{ComplexMatrix, HermitianMatrix, UnitaryMatrix, C64};
