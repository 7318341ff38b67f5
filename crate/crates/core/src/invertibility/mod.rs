//! Phase-space invertibility: inverse checks on finite test windows, the
//! candidate inverse, the deciders and the two-predecessor witness.
//!
//! All enumerations run in lexicographic window order and report the least
//! violation, so results do not depend on the number of worker threads.

mod candidate;
mod decide;
mod fully;
mod purely;
mod r2;
mod report;
mod window;

pub use candidate::{derive_candidate_inverse, DerivationConflict};
pub use decide::{decide_fully_1d, decide_purely, DecideOptions, DEFAULT_CANDIDATE_CAP, DEFAULT_WINDOW_CAP};
pub use fully::{check_inverse_fully_1d, FullyTestWindow};
pub use purely::{check_inverse_purely, PurelyTestWindow};
pub use r2::{r2_counterexample, R2Witness};
pub use report::{Clause, DecisionReport, Stats, Verdict, Witness};
