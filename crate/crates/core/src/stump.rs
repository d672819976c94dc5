//! Weighted decision-stump weak learner.
//!
//! For every feature the candidate thresholds are a sentinel below the
//! smallest value plus the midpoint of each pair of consecutive distinct
//! values. Both polarities are tried, so the best stump never does worse
//! than a fair coin.
//!
//! Ties are resolved in a fixed order: lowest feature, then smallest
//! threshold, then polarity +1 before -1. Two candidates count as tied when
//! their weighted errors are within [`TIE_TOLERANCE`] of the overall minimum;
//! prefix sums taken in different orders round differently, and an exact
//! comparison would let that rounding pick the winner.

use std::fmt;

use crate::error::Result;
use crate::model::{Dataset, Distribution, Hypothesis, Label};
use crate::par::Execution;

pub const TIE_TOLERANCE: f64 = 1e-13;

/// Threshold used by the "below every value" candidate.
pub const SENTINEL_THRESHOLD: f64 = f64::NEG_INFINITY;

/// Predicts `polarity` when `x[feature] <= threshold`, otherwise the
/// opposite label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stump {
    pub feature: usize,
    pub threshold: f64,
    pub polarity: Label,
}

impl Stump {
    pub fn new(feature: usize, threshold: f64, polarity: Label) -> Self {
        Stump {
            feature,
            threshold,
            polarity,
        }
    }

    /// The same split with the opposite prediction on each side.
    pub fn flipped(&self) -> Self {
        Stump {
            polarity: self.polarity.flip(),
            ..*self
        }
    }
}

impl Hypothesis for Stump {
    fn predict(&self, features: &[f64]) -> Label {
        if features[self.feature] <= self.threshold {
            self.polarity
        } else {
            self.polarity.flip()
        }
    }

    fn min_dim(&self) -> usize {
        self.feature + 1
    }
}

impl fmt::Display for Stump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x[{}] <= {} ? {} : {}",
            self.feature,
            self.threshold,
            self.polarity,
            self.polarity.flip()
        )
    }
}

/// Threshold separating `lo < hi`: their midpoint, or `lo` when the
/// midpoint rounds onto `hi`.
pub fn midpoint(lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * lo + 0.5 * hi;
    if lo <= mid && mid < hi {
        mid
    } else {
        lo
    }
}

/// Something that fits a hypothesis to a weighted sample.
pub trait WeakLearner: Sync {
    type Hypothesis: Hypothesis + Clone + Send + Sync;

    /// Returns the fitted hypothesis and its weighted error under `d`.
    fn fit(&self, data: &Dataset, d: &Distribution) -> Result<(Self::Hypothesis, f64)>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StumpLearner {
    pub execution: Execution,
}

impl StumpLearner {
    pub fn new(execution: Execution) -> Self {
        StumpLearner { execution }
    }
}

impl WeakLearner for StumpLearner {
    type Hypothesis = Stump;

    fn fit(&self, data: &Dataset, d: &Distribution) -> Result<(Stump, f64)> {
        train_stump_with(data, d, self.execution)
    }
}

/// Best stump under `d`, with its weighted error.
pub fn train_stump(data: &Dataset, d: &Distribution) -> Result<(Stump, f64)> {
    train_stump_with(data, d, Execution::default())
}

pub fn train_stump_with(
    data: &Dataset,
    d: &Distribution,
    execution: Execution,
) -> Result<(Stump, f64)> {
    d.check_len(data.len())?;
    let totals = ClassMass::of(data, d);

    let per_feature_min = execution.map_range(data.dim(), |j| {
        let mut best = f64::INFINITY;
        scan_feature(data, d, j, totals, |_, err| {
            best = best.min(err);
            false
        });
        best
    });
    let cutoff = per_feature_min.iter().copied().fold(f64::INFINITY, f64::min) + TIE_TOLERANCE;

    let firsts = execution.map_range(data.dim(), |j| {
        if per_feature_min[j] > cutoff {
            return None;
        }
        let mut found = None;
        scan_feature(data, d, j, totals, |stump, err| {
            if err <= cutoff {
                found = Some((stump, err));
                true
            } else {
                false
            }
        });
        found
    });
    let (stump, err) = firsts
        .into_iter()
        .flatten()
        .next()
        .expect("a feature attaining the minimum always has a candidate within tolerance");
    Ok((stump, err.clamp(0.0, 1.0)))
}

#[derive(Debug, Clone, Copy)]
struct ClassMass {
    pos: f64,
    neg: f64,
}

impl ClassMass {
    fn of(data: &Dataset, d: &Distribution) -> Self {
        let mut m = ClassMass { pos: 0.0, neg: 0.0 };
        for (y, w) in data.labels().iter().zip(d.weights()) {
            match y {
                Label::Pos => m.pos += w,
                Label::Neg => m.neg += w,
            }
        }
        m
    }
}

/// Visits the candidates of feature `j` in tie-break order until `visit`
/// returns true.
fn scan_feature<F>(data: &Dataset, d: &Distribution, j: usize, totals: ClassMass, mut visit: F)
where
    F: FnMut(Stump, f64) -> bool,
{
    // Sentinel: nothing is <= threshold, so polarity p predicts -p everywhere.
    if visit(Stump::new(j, SENTINEL_THRESHOLD, Label::Pos), totals.pos)
        || visit(Stump::new(j, SENTINEL_THRESHOLD, Label::Neg), totals.neg)
    {
        return;
    }

    let order = data.sorted_indices(j);
    let mut left = ClassMass { pos: 0.0, neg: 0.0 };
    for (k, &i) in order.iter().enumerate() {
        let i = i as usize;
        match data.label(i) {
            Label::Pos => left.pos += d.weight(i),
            Label::Neg => left.neg += d.weight(i),
        }
        let Some(&next) = order.get(k + 1) else {
            break;
        };
        let (lo, hi) = (data.value(i, j), data.value(next as usize, j));
        if lo == hi {
            continue;
        }
        let threshold = midpoint(lo, hi);
        let err_pos = left.neg + (totals.pos - left.pos).max(0.0);
        let err_neg = left.pos + (totals.neg - left.neg).max(0.0);
        if visit(Stump::new(j, threshold, Label::Pos), err_pos)
            || visit(Stump::new(j, threshold, Label::Neg), err_neg)
        {
            return;
        }
    }
}
