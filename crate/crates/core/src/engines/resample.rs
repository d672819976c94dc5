use rand::distributions::{Distribution as _, WeightedIndex};
use rand::Rng;

use crate::error::{BoostError, Result};
use crate::model::{Dataset, Distribution};

/// `n` independent draws with replacement, sample `i` with probability
/// `d(i)`.
pub fn resample<R: Rng + ?Sized>(data: &Dataset, d: &Distribution, rng: &mut R) -> Result<Dataset> {
    d.check_len(data.len())?;
    let index = WeightedIndex::new(d.weights())
        .map_err(|e| BoostError::invalid(format!("cannot sample from distribution: {e}")))?;
    let picks: Vec<usize> = (0..data.len()).map(|_| index.sample(rng)).collect();
    data.select(&picks)
}
