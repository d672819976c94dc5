use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{BoostError, Result};
use crate::model::{Dataset, Label};

pub const TOY_DEFAULT_N: usize = 1000;
pub const TOY_DEFAULT_DIM: usize = 100;

/// Majority vote of the signs of the first three coordinates, with
/// `sign(0) = +1`.
pub fn majority_label(x: &[f64]) -> Label {
    let votes: i32 = x[..3].iter().map(|&v| i32::from(Label::from_score(v).value())).sum();
    Label::from_score(f64::from(votes))
}

/// `n` points uniform on `[-1, 1]^dim`, labelled by [`majority_label`].
pub fn generate_majority_toy(n: usize, dim: usize, seed: u64) -> Result<Dataset> {
    if dim < 3 {
        return Err(BoostError::invalid(format!(
            "majority toy needs at least 3 dimensions, got {dim}"
        )));
    }
    if n == 0 {
        return Err(BoostError::invalid("majority toy needs at least one sample"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(n * dim);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let start = features.len();
        features.extend((0..dim).map(|_| rng.gen_range(-1.0..=1.0)));
        labels.push(majority_label(&features[start..]));
    }
    Dataset::from_parts(dim, features, labels)
}
