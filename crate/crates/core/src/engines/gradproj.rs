use crate::error::Result;
use crate::model::{Dataset, Distribution, Hypothesis};
use crate::stump::WeakLearner;

use super::{
    append_term, finish_round, fit_round, margins_from_scores, BoostConfig, BoostState, FitOutcome,
    RoundOutcome,
};

/// Normalized magnitude of the negative functional gradient of the
/// exponential risk at the ensemble with training scores `scores`.
///
/// The gradient at `x_i` is `−y_i exp(−y_i f(x_i))`, so its projection onto
/// a ±1 hypothesis `h` is `(1/n) Σ y_i h(x_i) exp(−y_i f(x_i))`. Normalizing
/// the `exp(−y_i f(x_i))` factors gives the distribution under which
/// maximizing that projection is the same as minimizing weighted error.
pub fn gradient_distribution(scores: &[f64], data: &Dataset) -> Result<Distribution> {
    let log_w: Vec<f64> = margins_from_scores(scores, data).iter().map(|m| -m).collect();
    Distribution::from_log_weights(&log_w)
}

pub fn gradient_projection_round<L: WeakLearner>(
    state: &mut BoostState<L::Hypothesis>,
    data: &Dataset,
    learner: &L,
    config: &BoostConfig,
) -> Result<RoundOutcome> {
    state.check_data(data)?;
    let d = gradient_distribution(&state.scores, data)?;
    let fitted = match fit_round(state, data, &d, learner, config)? {
        FitOutcome::Fitted(f) => f,
        FitOutcome::Exhausted(epsilon) => return Ok(RoundOutcome::Exhausted { epsilon }),
    };
    // Risk ratio R[f + ηh] / R[f]; bounds training error the same way the
    // multiplicative normalizer does.
    let z: f64 = data
        .rows()
        .zip(d.weights())
        .map(|((x, y), w)| w * (-fitted.step * y.as_f64() * fitted.hypothesis.predict(x).as_f64()).exp())
        .sum();
    let record = append_term(state, data, &fitted, Some(z))?;
    state.dist = gradient_distribution(&state.scores, data)?;
    Ok(finish_round(record, fitted.epsilon, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{Algorithm, BoostConfig};
    use crate::model::{edge, empirical_inner_product, Label, Sample};
    use crate::stump::{Stump, StumpLearner};

    fn data() -> Dataset {
        Dataset::new(vec![
            Sample::new(vec![0.1, 3.0], Label::Pos),
            Sample::new(vec![0.4, 1.0], Label::Neg),
            Sample::new(vec![0.2, 2.0], Label::Neg),
            Sample::new(vec![0.9, 0.5], Label::Pos),
            Sample::new(vec![0.7, 2.5], Label::Pos),
            Sample::new(vec![0.3, 0.1], Label::Neg),
        ])
        .unwrap()
    }

    #[test]
    fn first_round_gradient_is_uniform() {
        let data = data();
        let d = gradient_distribution(&vec![0.0; data.len()], &data).unwrap();
        assert_eq!(d, Distribution::uniform(data.len()).unwrap());
    }

    #[test]
    fn chosen_hypothesis_maximizes_projection() {
        let data = data();
        let config = BoostConfig::new(Algorithm::GradientProjection, 3);
        let mut state = BoostState::<Stump>::new(&data, 0).unwrap();
        let learner = StumpLearner::default();
        for _ in 0..3 {
            let neg_grad: Vec<f64> = state
                .margins(&data)
                .iter()
                .zip(data.labels())
                .map(|(m, y)| y.as_f64() * (-m).exp())
                .collect();
            gradient_projection_round(&mut state, &data, &learner, &config).unwrap();
            let (_, h) = state.ensemble().terms().last().unwrap();
            let h_vals: Vec<f64> = data.rows().map(|(x, _)| h.predict(x).as_f64()).collect();
            let chosen = empirical_inner_product(&neg_grad, &h_vals).unwrap();
            // Every candidate's projection is proportional to its edge; the
            // flipped stump has the opposite edge and cannot beat it.
            let flipped: Vec<f64> = h_vals.iter().map(|v| -v).collect();
            assert!(chosen >= empirical_inner_product(&neg_grad, &flipped).unwrap());
            let d = gradient_distribution(
                &state
                    .scores()
                    .iter()
                    .zip(&h_vals)
                    .map(|(s, v)| s - state.ensemble().terms().last().unwrap().0 * v)
                    .collect::<Vec<_>>(),
                &data,
            )
            .unwrap();
            let scale: f64 = neg_grad.iter().map(|g| g.abs()).sum::<f64>() / data.len() as f64;
            assert!((chosen - scale * edge(h, &data, &d).unwrap()).abs() < 1e-12);
        }
    }
}
