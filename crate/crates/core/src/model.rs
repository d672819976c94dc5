//! Domain types shared by every engine: labels, datasets, distributions,
//! hypotheses and additive ensembles, plus the weighted metrics defined on
//! them.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{BoostError, Result};
use crate::math;

/// Tolerance on `Σ weights = 1` accepted by [`Distribution::new`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Binary class label. Stored strictly as -1 / +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Label {
    Neg = -1,
    Pos = 1,
}

impl Label {
    /// Sign with the tie convention used throughout: `sign(0) = +1`.
    pub fn from_score(score: f64) -> Label {
        if score >= 0.0 {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    pub fn value(self) -> i8 {
        self as i8
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self as i8)
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Neg => Label::Pos,
            Label::Pos => Label::Neg,
        }
    }
}

impl TryFrom<i64> for Label {
    type Error = BoostError;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Label::Pos),
            -1 => Ok(Label::Neg),
            other => Err(BoostError::invalid(format!(
                "label must be -1 or +1, got {other}"
            ))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pos => f.write_str("+1"),
            Label::Neg => f.write_str("-1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub features: Vec<f64>,
    pub label: Label,
}

impl Sample {
    pub fn new(features: Vec<f64>, label: Label) -> Self {
        Sample { features, label }
    }
}

/// Immutable, non-empty table of finite feature vectors with ±1 labels.
///
/// Features are stored row-major. Per-feature sort orders are computed on
/// first use and cached, since the stump learner needs them every round.
#[derive(Debug, Clone)]
pub struct Dataset {
    dim: usize,
    features: Vec<f64>,
    labels: Vec<Label>,
    sorted: OnceLock<Vec<Vec<u32>>>,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.labels == other.labels && self.features == other.features
    }
}

impl Dataset {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let dim = samples
            .first()
            .map(|s| s.features.len())
            .ok_or_else(|| BoostError::invalid("dataset must contain at least one sample"))?;
        let mut features = Vec::with_capacity(dim * samples.len());
        let mut labels = Vec::with_capacity(samples.len());
        for s in samples {
            if s.features.len() != dim {
                return Err(BoostError::DimensionMismatch {
                    expected: dim,
                    actual: s.features.len(),
                });
            }
            features.extend_from_slice(&s.features);
            labels.push(s.label);
        }
        Self::from_parts(dim, features, labels)
    }

    /// Builds a dataset from a row-major feature buffer.
    pub fn from_parts(dim: usize, features: Vec<f64>, labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return Err(BoostError::invalid("dataset must contain at least one sample"));
        }
        if dim == 0 {
            return Err(BoostError::invalid("dataset dimensionality must be positive"));
        }
        if features.len() != dim * labels.len() {
            return Err(BoostError::LengthMismatch {
                expected: dim * labels.len(),
                actual: features.len(),
            });
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(BoostError::invalid(format!(
                "non-finite feature value at sample {}, feature {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Dataset {
            dim,
            features,
            labels,
            sorted: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn value(&self, i: usize, feature: usize) -> f64 {
        self.features[i * self.dim + feature]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = (&[f64], Label)> + '_ {
        self.features
            .chunks_exact(self.dim)
            .zip(self.labels.iter().copied())
    }

    pub fn sample(&self, i: usize) -> Sample {
        Sample::new(self.row(i).to_vec(), self.labels[i])
    }

    /// New dataset made of the given rows, in the given order. Repeats are
    /// allowed.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut features = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Self::from_parts(self.dim, features, labels)
    }

    /// Sample indices sorted by ascending value of `feature`; ties keep
    /// sample order.
    pub fn sorted_indices(&self, feature: usize) -> &[u32] {
        let all = self.sorted.get_or_init(|| {
            (0..self.dim)
                .map(|j| {
                    let mut idx: Vec<u32> = (0..self.len() as u32).collect();
                    idx.sort_by(|&a, &b| {
                        self.value(a as usize, j).total_cmp(&self.value(b as usize, j))
                    });
                    idx
                })
                .collect()
        });
        &all[feature]
    }
}

/// Probability weights over the samples of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    weights: Vec<f64>,
}

impl Distribution {
    /// Validates an already-normalized weight vector.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        check_weights(&weights)?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(BoostError::invalid(format!(
                "distribution weights sum to {sum}, not 1"
            )));
        }
        Ok(Distribution { weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(BoostError::invalid("distribution over zero samples"));
        }
        Ok(Distribution {
            weights: vec![1.0 / n as f64; n],
        })
    }

    /// Normalizes non-negative weights with a positive finite total.
    pub fn from_unnormalized(mut weights: Vec<f64>) -> Result<Self> {
        check_weights(&weights)?;
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0 && sum.is_finite()) {
            return Err(BoostError::invalid(format!(
                "cannot normalize weights with total {sum}"
            )));
        }
        weights.iter_mut().for_each(|w| *w /= sum);
        Ok(Distribution { weights })
    }

    /// `D(i) ∝ exp(log_weights[i])`, computed without overflow.
    pub fn from_log_weights(log_weights: &[f64]) -> Result<Self> {
        if log_weights.is_empty() {
            return Err(BoostError::invalid("distribution over zero samples"));
        }
        if log_weights.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(BoostError::invalid("log-weights must be finite or -inf"));
        }
        let total = math::logsumexp(log_weights);
        if !total.is_finite() {
            return Err(BoostError::invalid("all log-weights are -inf"));
        }
        Self::from_unnormalized(log_weights.iter().map(|&l| (l - total).exp()).collect())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(BoostError::LengthMismatch {
                expected: n,
                actual: self.len(),
            });
        }
        Ok(())
    }
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(BoostError::invalid("distribution over zero samples"));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(BoostError::invalid(format!(
            "distribution weight {w} is not a finite non-negative number"
        )));
    }
    Ok(())
}

/// A deterministic binary classifier.
pub trait Hypothesis {
    fn predict(&self, features: &[f64]) -> Label;

    /// Smallest feature-vector length this hypothesis can read.
    fn min_dim(&self) -> usize;
}

impl<H: Hypothesis + ?Sized> Hypothesis for &H {
    fn predict(&self, features: &[f64]) -> Label {
        (**self).predict(features)
    }

    fn min_dim(&self) -> usize {
        (**self).min_dim()
    }
}

/// A constant classifier. Mostly useful in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constant(pub Label);

impl Hypothesis for Constant {
    fn predict(&self, _: &[f64]) -> Label {
        self.0
    }

    fn min_dim(&self) -> usize {
        0
    }
}

/// Weighted vote `f(x) = Σ_s coefficient_s · h_s(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<H> {
    dim: Option<usize>,
    terms: Vec<(f64, H)>,
}

impl<H> Default for Ensemble<H> {
    fn default() -> Self {
        Ensemble {
            dim: None,
            terms: Vec::new(),
        }
    }
}

impl<H: Hypothesis> Ensemble<H> {
    pub fn new() -> Self {
        Self::default()
    }

    /// An empty ensemble that only accepts feature vectors of length `dim`.
    pub fn with_dim(dim: usize) -> Self {
        Ensemble {
            dim: Some(dim),
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coefficient: f64, hypothesis: H) -> Result<()> {
        if !coefficient.is_finite() {
            return Err(BoostError::invalid(format!(
                "ensemble coefficient must be finite, got {coefficient}"
            )));
        }
        if let Some(dim) = self.dim {
            if hypothesis.min_dim() > dim {
                return Err(BoostError::DimensionMismatch {
                    expected: dim,
                    actual: hypothesis.min_dim(),
                });
            }
        }
        self.terms.push((coefficient, hypothesis));
        Ok(())
    }

    pub fn terms(&self) -> &[(f64, H)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        match self.dim {
            Some(dim) if dim != len => Err(BoostError::DimensionMismatch {
                expected: dim,
                actual: len,
            }),
            _ => {
                let needed = self.terms.iter().map(|(_, h)| h.min_dim()).max().unwrap_or(0);
                if needed > len {
                    Err(BoostError::DimensionMismatch {
                        expected: needed,
                        actual: len,
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn score(&self, features: &[f64]) -> Result<f64> {
        self.check_dim(features.len())?;
        Ok(self.raw_score(features))
    }

    pub fn predict(&self, features: &[f64]) -> Result<Label> {
        self.score(features).map(Label::from_score)
    }

    pub(crate) fn predict_unchecked(&self, features: &[f64]) -> Label {
        Label::from_score(self.raw_score(features))
    }

    pub(crate) fn raw_score(&self, features: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, h)| c * h.predict(features).as_f64())
            .sum()
    }
}

impl<H: Hypothesis> Hypothesis for Ensemble<H> {
    fn predict(&self, features: &[f64]) -> Label {
        Label::from_score(self.raw_score(features))
    }

    fn min_dim(&self) -> usize {
        self.dim
            .unwrap_or_else(|| self.terms.iter().map(|(_, h)| h.min_dim()).max().unwrap_or(0))
    }
}

/// Telemetry for one boosting round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    pub epsilon: f64,
    pub step: f64,
    /// Weight-update normalizer; absent for DABoost.
    pub z: Option<f64>,
    pub train_error: f64,
    pub test_error: Option<f64>,
    pub exp_loss: f64,
}

pub fn ensemble_score<H: Hypothesis>(ensemble: &Ensemble<H>, features: &[f64]) -> Result<f64> {
    ensemble.score(features)
}

/// Sign of [`ensemble_score`], with a zero score mapped to +1.
pub fn ensemble_predict<H: Hypothesis>(ensemble: &Ensemble<H>, features: &[f64]) -> Result<Label> {
    ensemble.predict(features)
}

fn check_hypothesis_dim<H: Hypothesis>(h: &H, data: &Dataset) -> Result<()> {
    if h.min_dim() > data.dim() {
        return Err(BoostError::DimensionMismatch {
            expected: data.dim(),
            actual: h.min_dim(),
        });
    }
    Ok(())
}

/// Probability mass of the samples `h` misclassifies.
pub fn weighted_error<H: Hypothesis>(h: &H, data: &Dataset, d: &Distribution) -> Result<f64> {
    d.check_len(data.len())?;
    check_hypothesis_dim(h, data)?;
    Ok(data
        .rows()
        .zip(d.weights())
        .filter(|((x, y), _)| h.predict(x) != *y)
        .map(|(_, w)| *w)
        .sum())
}

/// `1 − 2ε`: the correlation between `h` and the labels under `d`.
pub fn edge<H: Hypothesis>(h: &H, data: &Dataset, d: &Distribution) -> Result<f64> {
    weighted_error(h, data, d).map(|e| 1.0 - 2.0 * e)
}

/// `(1/n) Σ f_i g_i` over function values at the n training points.
pub fn empirical_inner_product(f_vals: &[f64], g_vals: &[f64]) -> Result<f64> {
    if f_vals.len() != g_vals.len() {
        return Err(BoostError::LengthMismatch {
            expected: f_vals.len(),
            actual: g_vals.len(),
        });
    }
    if f_vals.is_empty() {
        return Err(BoostError::invalid("inner product of empty vectors"));
    }
    let dot: f64 = f_vals.iter().zip(g_vals).map(|(a, b)| a * b).sum();
    Ok(dot / f_vals.len() as f64)
}

/// Per-sample margins `y_i f(x_i)`.
pub fn margins<H: Hypothesis>(ensemble: &Ensemble<H>, data: &Dataset) -> Result<Vec<f64>> {
    ensemble.check_dim(data.dim())?;
    Ok(data
        .rows()
        .map(|(x, y)| y.as_f64() * ensemble.raw_score(x))
        .collect())
}

/// Mean exponential loss `(1/n) Σ exp(−y_i f(x_i))`.
pub fn exponential_loss<H: Hypothesis>(ensemble: &Ensemble<H>, data: &Dataset) -> Result<f64> {
    Ok(math::mean_exp_neg(&margins(ensemble, data)?))
}
