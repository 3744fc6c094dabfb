//! Finite-set insertion operators, exhaustive theorem sweeps, and
//! distinguishing-suffix (Myhill–Nerode) witness generation.

mod insert;
mod verify;
mod witness;

pub use insert::{brute_deletable_set, insert_once, insert_star_bounded};
pub use verify::{default_params, verify_theorem, TheoremParams, VerificationReport, THEOREMS};
pub use witness::{mn_witnesses, MNWitnessSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error("search budget exhausted after {visited} visited states")]
    BudgetExceeded { visited: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("suffix {z:?} does not distinguish {wm:?} from {wn:?}")]
    SeparatorUnverified { wm: String, wn: String, z: String },
}
