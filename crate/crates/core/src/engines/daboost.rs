use crate::error::{BoostError, Result};
use crate::math;
use crate::model::{Dataset, Distribution};
use crate::stump::WeakLearner;

use super::{append_term, finish_round, fit_round, BoostConfig, BoostState, FitOutcome, RoundOutcome};

/// Per-sample dual-averaging accumulator, kept in log space:
/// `log_accum[i] = ln Σ_k λ_k exp(−y_i f_k(x_i))` over every ensemble `f_k`
/// produced so far.
#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    log_accum: Vec<f64>,
    rounds: usize,
}

impl DualState {
    /// The empty accumulator (every entry `ln 0 = −∞`).
    pub fn new(n: usize) -> Self {
        DualState {
            log_accum: vec![f64::NEG_INFINITY; n],
            rounds: 0,
        }
    }

    pub fn log_accum(&self) -> &[f64] {
        &self.log_accum
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn len(&self) -> usize {
        self.log_accum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_accum.is_empty()
    }

    pub(crate) fn accumulate(&mut self, lambda: f64, margins: &[f64]) -> Result<()> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(BoostError::invalid(format!(
                "lambda must be a positive finite number, got {lambda}"
            )));
        }
        if margins.len() != self.log_accum.len() {
            return Err(BoostError::LengthMismatch {
                expected: self.log_accum.len(),
                actual: margins.len(),
            });
        }
        if let Some(m) = margins.iter().find(|m| !m.is_finite()) {
            return Err(BoostError::invalid(format!("non-finite margin {m}")));
        }
        let log_lambda = lambda.ln();
        for (acc, m) in self.log_accum.iter_mut().zip(margins) {
            *acc = math::log_add_exp(*acc, log_lambda - m);
        }
        self.rounds += 1;
        Ok(())
    }
}

/// Adds `λ · exp(−margins[i])` to every accumulator entry. `margins` must
/// be those of the cumulative ensemble after the current round's term.
pub fn daboost_update_dual(dual: &DualState, lambda_t: f64, margins: &[f64]) -> Result<DualState> {
    let mut next = dual.clone();
    next.accumulate(lambda_t, margins)?;
    Ok(next)
}

/// Normalizes the accumulator into a distribution.
pub fn daboost_distribution(dual: &DualState) -> Result<Distribution> {
    if dual.rounds == 0 {
        return Err(BoostError::invalid(
            "dual state has no accumulated rounds yet",
        ));
    }
    Distribution::from_log_weights(&dual.log_accum)
}

pub fn daboost_round<L: WeakLearner>(
    state: &mut BoostState<L::Hypothesis>,
    data: &Dataset,
    learner: &L,
    config: &BoostConfig,
) -> Result<RoundOutcome> {
    state.check_data(data)?;
    let d = state.dist.clone();
    let fitted = match fit_round(state, data, &d, learner, config)? {
        FitOutcome::Fitted(f) => f,
        FitOutcome::Exhausted(epsilon) => return Ok(RoundOutcome::Exhausted { epsilon }),
    };
    let record = append_term(state, data, &fitted, None)?;
    let margins = state.margins(data);
    state.dual.accumulate(config.lambda, &margins)?;
    state.dist = daboost_distribution(&state.dual)?;
    Ok(finish_round(record, fitted.epsilon, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn first_accumulation_is_negated_margin() {
        let m = [0.3, -1.2, 2.0];
        let dual = daboost_update_dual(&DualState::new(3), 1.0, &m).unwrap();
        for (a, b) in dual.log_accum().iter().zip(m) {
            assert_eq!(*a, -b);
        }
    }

    #[test]
    fn two_rounds_are_a_two_term_logsumexp() {
        let m1 = [0.3, -1.2, 2.0];
        let m2 = [0.9, 0.4, -0.7];
        let dual = daboost_update_dual(&DualState::new(3), 1.0, &m1).unwrap();
        let dual = daboost_update_dual(&dual, 1.0, &m2).unwrap();
        for i in 0..3 {
            let expected = ((-m1[i]).exp() + (-m2[i]).exp()).ln();
            assert_relative_eq!(dual.log_accum()[i], expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn lambda_scales_every_term() {
        let m = [0.5, -0.5];
        let dual = daboost_update_dual(&DualState::new(2), 2.5, &m).unwrap();
        assert_relative_eq!(dual.log_accum()[0], 2.5f64.ln() - 0.5, epsilon = 1e-15);
    }

    #[test]
    fn huge_margins_stay_finite() {
        let mut dual = DualState::new(2);
        for _ in 0..5 {
            dual = daboost_update_dual(&dual, 1.0, &[1000.0, -1000.0]).unwrap();
        }
        assert!(dual.log_accum().iter().all(|v| v.is_finite()));
        let d = daboost_distribution(&dual).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert_eq!(d.weight(1), 1.0);
    }

    #[test]
    fn constant_margins_give_uniform() {
        let dual = daboost_update_dual(&DualState::new(4), 1.0, &[0.7; 4]).unwrap();
        let d = daboost_distribution(&dual).unwrap();
        for w in d.weights() {
            assert_relative_eq!(*w, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn rejects_bad_lambda_and_lengths() {
        let dual = DualState::new(2);
        assert!(daboost_update_dual(&dual, 0.0, &[0.0, 0.0]).is_err());
        assert!(daboost_update_dual(&dual, -1.0, &[0.0, 0.0]).is_err());
        assert!(daboost_update_dual(&dual, 1.0, &[0.0]).is_err());
        assert!(daboost_distribution(&dual).is_err());
    }
}
