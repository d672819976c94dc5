//! Boosting on the exponential loss, three ways.
//!
//! * AdaBoost with multiplicative reweighting.
//! * Gradient projection in function space, which picks the same
//!   hypotheses and step sizes as AdaBoost.
//! * DABoost, a dual-averaging variant whose sample distribution is driven
//!   by the accumulated losses of every past ensemble.
//!
//! Decision stumps are the weak learner. The [`data`] module loads CSV and
//! LIBSVM files and generates the majority-vote toy problem; [`eval`] turns
//! per-round records into error curves.

pub mod data;
pub mod engines;
pub mod error;
pub mod eval;
pub mod math;
pub mod model;
pub mod par;
pub mod stump;

pub use engines::{
    run_boosting, run_boosting_with, Algorithm, BoostConfig, BoostRun, BoostState, RoundOutcome,
    StepRule, StopReason, WeightingMode,
};
pub use error::{BoostError, Result};
pub use model::{Dataset, Distribution, Ensemble, Hypothesis, Label, RoundRecord, Sample};
pub use par::Execution;
pub use stump::{Stump, StumpLearner, WeakLearner};
