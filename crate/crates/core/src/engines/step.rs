use std::fmt;
use std::str::FromStr;

use crate::error::BoostError;

pub const DEFAULT_EPSILON_CLAMP: f64 = 1e-10;

/// How a round's weighted error is turned into the coefficient of its
/// hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepRule {
    /// `½ ln((1−ε)/ε)`, the exact line-search minimizer of the exponential
    /// loss along the new hypothesis.
    #[default]
    Log,
    /// `½ sqrt((1−ε)/ε)`.
    Sqrt,
}

impl StepRule {
    /// Coefficient for an already clamped `epsilon`.
    pub fn apply(self, epsilon: f64) -> f64 {
        let odds = (1.0 - epsilon) / epsilon;
        match self {
            StepRule::Log => 0.5 * odds.ln(),
            StepRule::Sqrt => 0.5 * odds.sqrt(),
        }
    }
}

impl FromStr for StepRule {
    type Err = BoostError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" => Ok(StepRule::Log),
            "sqrt" => Ok(StepRule::Sqrt),
            other => Err(BoostError::Config(format!("unknown step rule '{other}'"))),
        }
    }
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepRule::Log => "log",
            StepRule::Sqrt => "sqrt",
        })
    }
}

/// Clamps `epsilon` into `[clamp, 1 − clamp]`.
pub fn clamp_epsilon(epsilon: f64, clamp: f64) -> f64 {
    epsilon.clamp(clamp, 1.0 - clamp)
}

/// Step size under `rule` after clamping with [`DEFAULT_EPSILON_CLAMP`].
pub fn step_size(epsilon: f64, rule: StepRule) -> f64 {
    step_size_clamped(epsilon, rule, DEFAULT_EPSILON_CLAMP)
}

pub fn step_size_clamped(epsilon: f64, rule: StepRule, clamp: f64) -> f64 {
    rule.apply(clamp_epsilon(epsilon, clamp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_values() {
        assert_eq!(step_size(0.5, StepRule::Log), 0.0);
        assert_relative_eq!(step_size(0.25, StepRule::Log), 0.5 * 3f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(step_size(0.25, StepRule::Log), 0.549306, epsilon = 1e-6);
        assert_relative_eq!(step_size(0.25, StepRule::Sqrt), 0.5 * 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(step_size(0.25, StepRule::Sqrt), 0.866025, epsilon = 1e-6);
    }

    #[test]
    fn extremes_stay_finite() {
        for rule in [StepRule::Log, StepRule::Sqrt] {
            for eps in [0.0, 1.0, -0.5, 2.0] {
                assert!(step_size(eps, rule).is_finite());
            }
            assert!(step_size(1e-3, rule) > 0.0);
        }
        assert_relative_eq!(
            step_size(0.0, StepRule::Log),
            0.5 * ((1.0 - 1e-10) / 1e-10f64).ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn exp_of_log_rule_is_twice_sqrt_rule() {
        for eps in [0.05, 0.2, 0.4] {
            assert_relative_eq!(
                StepRule::Log.apply(eps).exp(),
                2.0 * StepRule::Sqrt.apply(eps),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn log_rule_zeroes_line_search_derivative() {
        for eps in [0.01, 0.1, 0.3, 0.45, 0.5] {
            let eta = StepRule::Log.apply(eps);
            let slope = eps * eta.exp() - (1.0 - eps) * (-eta).exp();
            assert!(slope.abs() < 1e-9, "eps={eps} slope={slope}");
        }
    }

    #[test]
    fn parses_names() {
        assert_eq!("log".parse::<StepRule>().unwrap(), StepRule::Log);
        assert_eq!("sqrt".parse::<StepRule>().unwrap(), StepRule::Sqrt);
        assert!("exp".parse::<StepRule>().is_err());
    }
}
