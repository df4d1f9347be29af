//! Confidence intervals and goodness-of-fit tests used by the experiments.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

pub const CONFIDENCE: f64 = 0.99;

/// Two-sided standard-normal quantile for the given confidence level.
pub fn z_value(confidence: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.5 + confidence / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson(successes: u64, trials: u64, confidence: f64) -> Interval {
    assert!(trials > 0, "wilson interval needs at least one trial");
    let n = trials as f64;
    let p = successes as f64 / n;
    let z = z_value(confidence);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Interval { lo: (centre - half).max(0.0), hi: (centre + half).min(1.0) }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

fn upper_tail(statistic: f64, dof: u64) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    1.0 - ChiSquared::new(dof as f64).expect("positive dof").cdf(statistic)
}

/// Pearson test that two samples of category counts come from the same
/// distribution. Categories empty in both samples are dropped.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> ChiSquareResult {
    assert_eq!(a.len(), b.len(), "category count mismatch");
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let total = na + nb;
    let mut statistic = 0.0;
    let mut used = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        used += 1;
        for (obs, n) in [(x as f64, na), (y as f64, nb)] {
            let expected = n * col / total;
            statistic += (obs - expected).powi(2) / expected;
        }
    }
    let dof = used.saturating_sub(1);
    ChiSquareResult { statistic, dof, p_value: upper_tail(statistic, dof) }
}

/// Pearson goodness-of-fit of observed counts against expected probabilities.
pub fn chi_square_fit(observed: &[u64], probabilities: &[f64]) -> ChiSquareResult {
    assert_eq!(observed.len(), probabilities.len(), "category count mismatch");
    let n = observed.iter().sum::<u64>() as f64;
    let mut statistic = 0.0;
    let mut used = 0u64;
    for (&o, &p) in observed.iter().zip(probabilities) {
        if p == 0.0 {
            assert_eq!(o, 0, "observation in a zero-probability category");
            continue;
        }
        used += 1;
        let e = n * p;
        statistic += (o as f64 - e).powi(2) / e;
    }
    let dof = used.saturating_sub(1);
    ChiSquareResult { statistic, dof, p_value: upper_tail(statistic, dof) }
}
