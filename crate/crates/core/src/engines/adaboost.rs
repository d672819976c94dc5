use crate::error::{BoostError, Result};
use crate::model::{Dataset, Distribution, Hypothesis};
use crate::stump::WeakLearner;

use super::{append_term, finish_round, fit_round, BoostConfig, BoostState, FitOutcome, RoundOutcome};

/// Multiplicative reweighting `D'(i) = D(i)·exp(−η y_i h(x_i)) / Z`.
///
/// Returns the new distribution and the empirical normalizer `Z`.
pub fn adaboost_update<H: Hypothesis>(
    d: &Distribution,
    eta: f64,
    h: &H,
    data: &Dataset,
) -> Result<(Distribution, f64)> {
    d.check_len(data.len())?;
    if !eta.is_finite() {
        return Err(BoostError::invalid(format!("step size must be finite, got {eta}")));
    }
    let shrink = (-eta).exp();
    let grow = eta.exp();
    let scaled: Vec<f64> = data
        .rows()
        .zip(d.weights())
        .map(|((x, y), w)| if h.predict(x) == y { w * shrink } else { w * grow })
        .collect();
    let z: f64 = scaled.iter().sum();
    Ok((Distribution::from_unnormalized(scaled)?, z))
}

pub fn adaboost_round<L: WeakLearner>(
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
    let (next, z) = adaboost_update(&d, fitted.step, &fitted.hypothesis, data)?;
    let record = append_term(state, data, &fitted, Some(z))?;
    state.dist = next;
    Ok(finish_round(record, fitted.epsilon, config))
}
