//! Log-domain helpers.

/// `ln(e^a + e^b)` without overflow. `-inf` is the identity element.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ_i e^{v_i}`; `-inf` for an empty slice.
pub fn logsumexp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// `(1/n) Σ exp(−m_i)`.
pub fn mean_exp_neg(margins: &[f64]) -> f64 {
    margins.iter().map(|m| (-m).exp()).sum::<f64>() / margins.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_add_exp_matches_direct() {
        assert_relative_eq!(log_add_exp(1.0, 2.0), (1f64.exp() + 2f64.exp()).ln(), epsilon = 1e-14);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 3.0), 3.0);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert_relative_eq!(log_add_exp(1000.0, 1000.0), 1000.0 + 2f64.ln(), epsilon = 1e-12);
        assert_eq!(log_add_exp(-1000.0, 1000.0), 1000.0);
    }

    #[test]
    fn logsumexp_large_values() {
        assert_relative_eq!(logsumexp(&[1000.0, 1000.0, 1000.0]), 1000.0 + 3f64.ln(), epsilon = 1e-12);
        assert_relative_eq!(logsumexp(&[-1000.0, -1000.0]), -1000.0 + 2f64.ln(), epsilon = 1e-12);
        assert_eq!(logsumexp(&[]), f64::NEG_INFINITY);
    }
}
