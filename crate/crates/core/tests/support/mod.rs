//! Independent oracles and random instance generators for the integration
//! and acceptance tests. Nothing here calls the code paths it checks.

#![allow(dead_code)]

use daboost::stump::{Stump, TIE_TOLERANCE};
use daboost::{Dataset, Distribution, Label, Sample};
use rand::Rng;

/// Every stump candidate in tie-break order: feature, then threshold
/// ascending (sentinel first), then polarity +1 before -1.
pub fn stump_candidates(data: &Dataset) -> Vec<Stump> {
    let mut out = Vec::new();
    for j in 0..data.dim() {
        let mut values: Vec<f64> = (0..data.len()).map(|i| data.value(i, j)).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        let mut thresholds = vec![f64::NEG_INFINITY];
        for w in values.windows(2) {
            let mid = 0.5 * w[0] + 0.5 * w[1];
            thresholds.push(if w[0] <= mid && mid < w[1] { mid } else { w[0] });
        }
        for t in thresholds {
            out.push(Stump::new(j, t, Label::Pos));
            out.push(Stump::new(j, t, Label::Neg));
        }
    }
    out
}

/// Weighted error by direct evaluation of every sample.
pub fn direct_error(stump: &Stump, data: &Dataset, d: &Distribution) -> f64 {
    let mut err = 0.0;
    for i in 0..data.len() {
        let x = data.value(i, stump.feature);
        let pred = if x <= stump.threshold {
            stump.polarity
        } else {
            stump.polarity.flip()
        };
        if pred != data.label(i) {
            err += d.weight(i);
        }
    }
    err
}

/// Exhaustive stump search with the documented tie rule.
pub fn brute_force_stump(data: &Dataset, d: &Distribution) -> (Stump, f64) {
    let scored: Vec<(Stump, f64)> = stump_candidates(data)
        .into_iter()
        .map(|s| {
            let e = direct_error(&s, data, d);
            (s, e)
        })
        .collect();
    let min = scored.iter().map(|(_, e)| *e).fold(f64::INFINITY, f64::min);
    *scored
        .iter()
        .find(|(_, e)| *e <= min + TIE_TOLERANCE)
        .expect("the minimum is attained")
}

/// DABoost distribution straight from its definition: `D(i) ∝ Σ_k λ
/// exp(−y_i f_k(x_i))`, given every stored cumulative score vector `f_k`.
/// A single global shift keeps the exponentials in range.
pub fn brute_force_dual_distribution(history: &[Vec<f64>], labels: &[Label], lambda: f64) -> Vec<f64> {
    let shift = history
        .iter()
        .flat_map(|f| f.iter().zip(labels).map(|(s, y)| -y.as_f64() * s))
        .fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = (0..labels.len())
        .map(|i| {
            history
                .iter()
                .map(|f| lambda * (-labels[i].as_f64() * f[i] - shift).exp())
                .sum()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|r| r / total).collect()
}

/// Random dataset with a few integer-valued features (to force repeated
/// values) and the rest continuous. Labels follow a noisy linear rule.
pub fn random_dataset<R: Rng>(rng: &mut R, max_n: usize, max_dim: usize) -> Dataset {
    let n = rng.gen_range(2..=max_n);
    let dim = rng.gen_range(1..=max_dim);
    let discrete: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.4)).collect();
    let coef: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let noise = rng.gen_range(0.0..0.3);
    let samples = (0..n)
        .map(|_| {
            let x: Vec<f64> = discrete
                .iter()
                .map(|&d| {
                    if d {
                        f64::from(rng.gen_range(0..4))
                    } else {
                        rng.gen_range(-2.0..2.0)
                    }
                })
                .collect();
            let s: f64 = x.iter().zip(&coef).map(|(a, b)| a * b).sum();
            let mut y = Label::from_score(s);
            if rng.gen_bool(noise) {
                y = y.flip();
            }
            Sample::new(x, y)
        })
        .collect();
    Dataset::new(samples).unwrap()
}

/// Random strictly positive distribution; occasionally uniform.
pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> Distribution {
    if rng.gen_bool(0.2) {
        return Distribution::uniform(n).unwrap();
    }
    Distribution::from_unnormalized((0..n).map(|_| rng.gen_range(0.001..1.0)).collect()).unwrap()
}

/// Majority-of-first-three toy data with a fraction of labels flipped.
pub fn noisy_majority(n: usize, dim: usize, noise: f64, seed: u64) -> Dataset {
    use rand::SeedableRng;
    let clean = daboost::data::generate_majority_toy(n, dim, seed).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let samples = (0..clean.len())
        .map(|i| {
            let mut s = clean.sample(i);
            if rng.gen_bool(noise) {
                s.label = s.label.flip();
            }
            s
        })
        .collect();
    Dataset::new(samples).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
