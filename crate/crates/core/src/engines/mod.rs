//! Boosting engines on the exponential loss.
//!
//! All three engines share one round skeleton: fit a weak hypothesis to the
//! current distribution, measure its weighted error under that distribution,
//! turn the error into a coefficient, append the term, and move to the next
//! distribution. They differ only in that last step:
//!
//! * [`Algorithm::AdaBoost`] reweights multiplicatively, `D'(i) ∝ D(i)·exp(−η y_i h(x_i))`.
//! * [`Algorithm::GradientProjection`] recomputes the distribution from the
//!   negative functional gradient of the empirical risk at the current
//!   ensemble, `D(i) ∝ exp(−y_i f(x_i))`.
//! * [`Algorithm::DaBoost`] uses the running λ-weighted sum of the losses of
//!   every ensemble produced so far, `D(i) ∝ Σ_k λ exp(−y_i f_k(x_i))`.

mod adaboost;
mod daboost;
mod gradproj;
mod resample;
mod step;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{BoostError, Result};
use crate::math;
use crate::model::{weighted_error, Dataset, Distribution, Ensemble, Hypothesis, Label, RoundRecord};
use crate::stump::{Stump, StumpLearner, WeakLearner};

pub use adaboost::{adaboost_round, adaboost_update};
pub use daboost::{daboost_distribution, daboost_round, daboost_update_dual, DualState};
pub use gradproj::{gradient_distribution, gradient_projection_round};
pub use resample::resample;
pub use step::{clamp_epsilon, step_size, step_size_clamped, StepRule, DEFAULT_EPSILON_CLAMP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    #[default]
    AdaBoost,
    GradientProjection,
    DaBoost,
}

impl FromStr for Algorithm {
    type Err = BoostError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaboost" => Ok(Algorithm::AdaBoost),
            "gradproj" | "gradient_projection" => Ok(Algorithm::GradientProjection),
            "daboost" => Ok(Algorithm::DaBoost),
            other => Err(BoostError::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::AdaBoost => "adaboost",
            Algorithm::GradientProjection => "gradproj",
            Algorithm::DaBoost => "daboost",
        })
    }
}

/// How the weak learner sees the current distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightingMode {
    /// Pass the weights directly.
    #[default]
    Reweight,
    /// Train on `n` draws with replacement from the distribution.
    Resample,
}

impl FromStr for WeightingMode {
    type Err = BoostError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reweight" => Ok(WeightingMode::Reweight),
            "resample" => Ok(WeightingMode::Resample),
            other => Err(BoostError::Config(format!("unknown weighting mode '{other}'"))),
        }
    }
}

impl fmt::Display for WeightingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightingMode::Reweight => "reweight",
            WeightingMode::Resample => "resample",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoostConfig {
    pub rounds: usize,
    pub algorithm: Algorithm,
    pub weighting_mode: WeightingMode,
    pub seed: u64,
    /// Constant per-round importance λ of the dual-averaging accumulator.
    pub lambda: f64,
    pub step_rule: StepRule,
    pub epsilon_clamp: f64,
    pub stop_on_zero_error: bool,
}

impl Default for BoostConfig {
    fn default() -> Self {
        BoostConfig {
            rounds: 100,
            algorithm: Algorithm::AdaBoost,
            weighting_mode: WeightingMode::Reweight,
            seed: 0,
            lambda: 1.0,
            step_rule: StepRule::Log,
            epsilon_clamp: DEFAULT_EPSILON_CLAMP,
            stop_on_zero_error: true,
        }
    }
}

impl BoostConfig {
    pub fn new(algorithm: Algorithm, rounds: usize) -> Self {
        BoostConfig {
            algorithm,
            rounds,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(BoostError::Config("rounds must be at least 1".into()));
        }
        if !(self.epsilon_clamp > 0.0 && self.epsilon_clamp < 0.5) {
            return Err(BoostError::Config(format!(
                "epsilon clamp must lie in (0, 0.5), got {}",
                self.epsilon_clamp
            )));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(BoostError::Config(format!(
                "lambda must be a positive finite number, got {}",
                self.lambda
            )));
        }
        if self.algorithm == Algorithm::GradientProjection
            && self.weighting_mode == WeightingMode::Resample
        {
            return Err(BoostError::Config(
                "gradient projection supports reweight mode only".into(),
            ));
        }
        Ok(())
    }
}

/// What happened in one call to a round function.
#[derive(Debug, Clone, PartialEq)]
pub enum RoundOutcome {
    /// The term was appended and boosting may continue.
    Continue(RoundRecord),
    /// The new hypothesis made no weighted mistakes. Its term (with the
    /// clamped step) was appended and the run should stop.
    ZeroError(RoundRecord),
    /// The best hypothesis was no better than chance. Nothing was appended.
    Exhausted { epsilon: f64 },
}

impl RoundOutcome {
    pub fn record(&self) -> Option<&RoundRecord> {
        match self {
            RoundOutcome::Continue(r) | RoundOutcome::ZeroError(r) => Some(r),
            RoundOutcome::Exhausted { .. } => None,
        }
    }
}

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    RoundLimit,
    ZeroError,
    WeakLearnerExhausted,
}

/// Mutable state of one boosting run over a fixed training set.
#[derive(Debug, Clone)]
pub struct BoostState<H> {
    ensemble: Ensemble<H>,
    dist: Distribution,
    scores: Vec<f64>,
    dual: DualState,
    rng: ChaCha8Rng,
    round: usize,
}

impl<H: Hypothesis> BoostState<H> {
    /// Fresh state: empty ensemble, uniform distribution.
    pub fn new(data: &Dataset, seed: u64) -> Result<Self> {
        Ok(BoostState {
            ensemble: Ensemble::with_dim(data.dim()),
            dist: Distribution::uniform(data.len())?,
            scores: vec![0.0; data.len()],
            dual: DualState::new(data.len()),
            rng: ChaCha8Rng::seed_from_u64(seed),
            round: 0,
        })
    }

    pub fn ensemble(&self) -> &Ensemble<H> {
        &self.ensemble
    }

    pub fn into_ensemble(self) -> Ensemble<H> {
        self.ensemble
    }

    /// Distribution the next round will train against.
    pub fn distribution(&self) -> &Distribution {
        &self.dist
    }

    /// Current ensemble scores `f(x_i)` on the training set.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn margins(&self, data: &Dataset) -> Vec<f64> {
        margins_from_scores(&self.scores, data)
    }

    pub fn dual(&self) -> &DualState {
        &self.dual
    }

    /// Number of terms appended so far.
    pub fn rounds_done(&self) -> usize {
        self.round
    }

    fn check_data(&self, data: &Dataset) -> Result<()> {
        if data.len() != self.scores.len() {
            return Err(BoostError::LengthMismatch {
                expected: self.scores.len(),
                actual: data.len(),
            });
        }
        self.ensemble.check_dim(data.dim())
    }
}

pub(crate) fn margins_from_scores(scores: &[f64], data: &Dataset) -> Vec<f64> {
    scores
        .iter()
        .zip(data.labels())
        .map(|(s, y)| y.as_f64() * s)
        .collect()
}

fn zero_one_from_scores(scores: &[f64], labels: &[Label]) -> f64 {
    let wrong = scores
        .iter()
        .zip(labels)
        .filter(|(s, y)| Label::from_score(**s) != **y)
        .count();
    wrong as f64 / labels.len() as f64
}

/// Result of fitting one round's hypothesis, before it is appended.
pub(crate) struct Fitted<H> {
    hypothesis: H,
    epsilon: f64,
    step: f64,
}

pub(crate) enum FitOutcome<H> {
    Fitted(Fitted<H>),
    Exhausted(f64),
}

/// Trains on `d` per the weighting mode and measures the error against `d`
/// itself.
pub(crate) fn fit_round<L: WeakLearner>(
    state: &mut BoostState<L::Hypothesis>,
    data: &Dataset,
    d: &Distribution,
    learner: &L,
    config: &BoostConfig,
) -> Result<FitOutcome<L::Hypothesis>> {
    let hypothesis = match config.weighting_mode {
        WeightingMode::Reweight => learner.fit(data, d)?.0,
        WeightingMode::Resample => {
            let drawn = resample(data, d, &mut state.rng)?;
            learner.fit(&drawn, &Distribution::uniform(drawn.len())?)?.0
        }
    };
    let epsilon = weighted_error(&hypothesis, data, d)?;
    if epsilon >= 0.5 {
        return Ok(FitOutcome::Exhausted(epsilon));
    }
    let step = step_size_clamped(epsilon, config.step_rule, config.epsilon_clamp);
    Ok(FitOutcome::Fitted(Fitted {
        hypothesis,
        epsilon,
        step,
    }))
}

/// Appends the fitted term, updates cached scores and returns the record for
/// it. `z` and the next distribution are the caller's job.
pub(crate) fn append_term<H: Hypothesis + Clone>(
    state: &mut BoostState<H>,
    data: &Dataset,
    fitted: &Fitted<H>,
    z: Option<f64>,
) -> Result<RoundRecord> {
    state.ensemble.push(fitted.step, fitted.hypothesis.clone())?;
    for (s, (x, _)) in state.scores.iter_mut().zip(data.rows()) {
        *s += fitted.step * fitted.hypothesis.predict(x).as_f64();
    }
    state.round += 1;
    let margins = margins_from_scores(&state.scores, data);
    Ok(RoundRecord {
        round: state.round,
        epsilon: fitted.epsilon,
        step: fitted.step,
        z,
        train_error: zero_one_from_scores(&state.scores, data.labels()),
        test_error: None,
        exp_loss: math::mean_exp_neg(&margins),
    })
}

pub(crate) fn finish_round(record: RoundRecord, epsilon: f64, config: &BoostConfig) -> RoundOutcome {
    if epsilon == 0.0 && config.stop_on_zero_error {
        RoundOutcome::ZeroError(record)
    } else {
        RoundOutcome::Continue(record)
    }
}

/// Runs one round of the configured engine.
pub fn boost_round<L: WeakLearner>(
    state: &mut BoostState<L::Hypothesis>,
    data: &Dataset,
    learner: &L,
    config: &BoostConfig,
) -> Result<RoundOutcome> {
    match config.algorithm {
        Algorithm::AdaBoost => adaboost_round(state, data, learner, config),
        Algorithm::GradientProjection => gradient_projection_round(state, data, learner, config),
        Algorithm::DaBoost => daboost_round(state, data, learner, config),
    }
}

/// A finished run.
#[derive(Debug, Clone)]
pub struct BoostRun<H> {
    pub ensemble: Ensemble<H>,
    pub records: Vec<RoundRecord>,
    pub stop: StopReason,
}

/// Boosts decision stumps on `train` for up to `config.rounds` rounds,
/// tracking test error after every round when `test` is given.
pub fn run_boosting(
    config: &BoostConfig,
    train: &Dataset,
    test: Option<&Dataset>,
) -> Result<BoostRun<Stump>> {
    run_boosting_with(config, train, test, &StumpLearner::default())
}

pub fn run_boosting_with<L: WeakLearner>(
    config: &BoostConfig,
    train: &Dataset,
    test: Option<&Dataset>,
    learner: &L,
) -> Result<BoostRun<L::Hypothesis>> {
    config.validate()?;
    if let Some(test) = test {
        if test.dim() != train.dim() {
            return Err(BoostError::DimensionMismatch {
                expected: train.dim(),
                actual: test.dim(),
            });
        }
    }
    let mut state = BoostState::new(train, config.seed)?;
    let mut test_scores = test.map(|t| vec![0.0; t.len()]);
    let mut records = Vec::with_capacity(config.rounds);
    let mut stop = StopReason::RoundLimit;

    for _ in 0..config.rounds {
        let outcome = boost_round(&mut state, train, learner, config)?;
        let (mut record, done) = match outcome {
            RoundOutcome::Continue(r) => (r, false),
            RoundOutcome::ZeroError(r) => {
                stop = StopReason::ZeroError;
                (r, true)
            }
            RoundOutcome::Exhausted { .. } => {
                stop = StopReason::WeakLearnerExhausted;
                break;
            }
        };
        if let (Some(test), Some(scores)) = (test, test_scores.as_mut()) {
            let (coef, h) = state.ensemble.terms().last().expect("term was just appended");
            for (s, (x, _)) in scores.iter_mut().zip(test.rows()) {
                *s += coef * h.predict(x).as_f64();
            }
            record.test_error = Some(zero_one_from_scores(scores, test.labels()));
        }
        records.push(record);
        if done {
            break;
        }
    }
    Ok(BoostRun {
        ensemble: state.into_ensemble(),
        records,
        stop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sample;

    fn xor_like() -> Dataset {
        Dataset::new(vec![
            Sample::new(vec![0.0, 0.0], Label::Pos),
            Sample::new(vec![1.0, 1.0], Label::Pos),
            Sample::new(vec![0.0, 1.0], Label::Neg),
            Sample::new(vec![1.0, 0.0], Label::Neg),
            Sample::new(vec![0.5, 0.2], Label::Pos),
        ])
        .unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(BoostConfig::default().validate().is_ok());
        for c in [
            BoostConfig { rounds: 0, ..Default::default() },
            BoostConfig { epsilon_clamp: 0.5, ..Default::default() },
            BoostConfig { lambda: 0.0, ..Default::default() },
        ] {
            assert!(c.validate().is_err());
        }
        let mut c = BoostConfig::new(Algorithm::GradientProjection, 5);
        c.weighting_mode = WeightingMode::Resample;
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_round_gives_single_term() {
        for algo in [Algorithm::AdaBoost, Algorithm::GradientProjection, Algorithm::DaBoost] {
            let run = run_boosting(&BoostConfig::new(algo, 1), &xor_like(), None).unwrap();
            assert_eq!(run.ensemble.len(), 1);
            assert_eq!(run.records.len(), 1);
            assert_eq!(run.records[0].round, 1);
        }
    }

    #[test]
    fn separable_data_stops_after_first_round() {
        let data = Dataset::new(vec![
            Sample::new(vec![1.0], Label::Neg),
            Sample::new(vec![2.0], Label::Neg),
            Sample::new(vec![3.0], Label::Pos),
        ])
        .unwrap();
        let run = run_boosting(&BoostConfig::new(Algorithm::AdaBoost, 50), &data, None).unwrap();
        assert_eq!(run.stop, StopReason::ZeroError);
        assert_eq!(run.records.len(), 1);
        assert_eq!(run.records[0].train_error, 0.0);
    }

    #[test]
    fn chance_level_learner_exhausts() {
        let data = Dataset::new(vec![
            Sample::new(vec![0.0], Label::Pos),
            Sample::new(vec![0.0], Label::Neg),
        ])
        .unwrap();
        let run = run_boosting(&BoostConfig::new(Algorithm::DaBoost, 10), &data, None).unwrap();
        assert_eq!(run.stop, StopReason::WeakLearnerExhausted);
        assert!(run.records.is_empty());
        assert!(run.ensemble.is_empty());
    }

    #[test]
    fn test_dimension_mismatch_is_rejected() {
        let test = Dataset::new(vec![Sample::new(vec![0.0], Label::Pos)]).unwrap();
        assert!(matches!(
            run_boosting(&BoostConfig::default(), &xor_like(), Some(&test)),
            Err(BoostError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn test_error_recorded_when_test_given() {
        let data = xor_like();
        let run = run_boosting(&BoostConfig::new(Algorithm::AdaBoost, 3), &data, Some(&data)).unwrap();
        for r in &run.records {
            assert_eq!(r.test_error, Some(r.train_error));
        }
    }

    #[test]
    fn names_round_trip() {
        for a in [Algorithm::AdaBoost, Algorithm::GradientProjection, Algorithm::DaBoost] {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        for m in [WeightingMode::Reweight, WeightingMode::Resample] {
            assert_eq!(m.to_string().parse::<WeightingMode>().unwrap(), m);
        }
        assert!("foo".parse::<Algorithm>().is_err());
    }
}
