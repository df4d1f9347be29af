use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground_truth::{to_f64, Exact};
use crate::model::BooleanFunction;
use crate::stats::{wilson, Interval, CONFIDENCE};

/// Exact mode enumerates `2^(k d)` tuples; above this many bits it samples.
pub const EXACT_LIMIT_BITS: u32 = 24;
/// Sample count for sampled mode.
pub const SAMPLES: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ViolationProbability {
    Exact(#[serde(with = "ratio_serde")] Exact),
    Sampled { estimate: f64, interval: Interval, samples: u64 },
}

impl ViolationProbability {
    pub fn exact(&self) -> Option<Exact> {
        match self {
            Self::Exact(r) => Some(*r),
            Self::Sampled { .. } => None,
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Self::Exact(r) => to_f64(*r),
            Self::Sampled { estimate, .. } => *estimate,
        }
    }

    /// What theorem checks compare against: the value itself when exact,
    /// otherwise the lower end of the confidence interval.
    pub fn lower_bound(&self) -> f64 {
        match self {
            Self::Exact(r) => to_f64(*r),
            Self::Sampled { interval, .. } => interval.lo,
        }
    }
}

mod ratio_serde {
    use super::Exact;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Exact, s: S) -> Result<S::Ok, S::Error> {
        (*r.numer(), *r.denom()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exact, D::Error> {
        let (n, m) = <(u64, u64)>::deserialize(d)?;
        if m == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Exact::new(n, m))
    }
}

// Violating k-tuples among those extending a fixed prefix with XOR `acc`
// and value parity `par`, with `left` points still to choose.
fn count_from(f: &BooleanFunction, acc: u32, par: u8, left: u32) -> u64 {
    let n = f.size() as u32;
    if left == 1 {
        return (0..n).filter(|&x| par ^ f.get(x) != f.get(acc ^ x)).count() as u64;
    }
    (0..n).map(|x| count_from(f, acc ^ x, par ^ f.get(x), left - 1)).sum()
}

/// `Pr_T[sum_{x in T} f(x) != f(XOR T)]` over uniform ordered `k`-tuples.
///
/// Exact when `k d <= 24`, otherwise estimated from [`SAMPLES`] samples.
/// Odd `k` is accepted so that the odd-size behaviour can be examined.
pub fn violation_probability_linearity(f: &BooleanFunction, k: u32) -> Result<ViolationProbability> {
    if k == 0 {
        return Err(Error::InvalidParameter("tuple size k must be positive".into()));
    }
    let bits = k.saturating_mul(f.dim());
    if bits > EXACT_LIMIT_BITS {
        return violation_probability_linearity_sampled(f, k, SAMPLES, 0);
    }
    let n = f.size() as u32;
    let violating: u64 = if k == 1 {
        count_from(f, 0, 0, 1)
    } else {
        (0..n).into_par_iter().map(|x| count_from(f, x, f.get(x), k - 1)).sum()
    };
    Ok(ViolationProbability::Exact(Exact::new(violating, 1u64 << bits)))
}

pub fn violation_probability_linearity_sampled(f: &BooleanFunction, k: u32, samples: u64, seed: u64) -> Result<ViolationProbability> {
    if k == 0 || samples == 0 {
        return Err(Error::InvalidParameter("need k > 0 and samples > 0".into()));
    }
    let n = f.size() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let (mut acc, mut par) = (0u32, 0u8);
        for _ in 0..k {
            let x = rng.gen_range(0..n);
            acc ^= x;
            par ^= f.get(x);
        }
        hits += u64::from(par != f.get(acc));
    }
    Ok(ViolationProbability::Sampled {
        estimate: hits as f64 / samples as f64,
        interval: wilson(hits, samples, CONFIDENCE),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(f: &BooleanFunction, k: u32) -> Exact {
        violation_probability_linearity(f, k).unwrap().exact().unwrap()
    }

    #[test]
    fn examples() {
        let lin = BooleanFunction::parity(4, 0b1010).unwrap();
        for k in 1..=5 {
            assert_eq!(exact(&lin, k), Exact::new(0, 1));
        }
        let shifted = BooleanFunction::from_fn(3, |x| x & 1 == 0).unwrap();
        assert_eq!(exact(&shifted, 2), Exact::new(1, 1));
        assert_eq!(exact(&shifted, 3), Exact::new(0, 1));
        let and = BooleanFunction::from_fn(2, |x| x == 0b11).unwrap();
        assert_eq!(exact(&and, 2), Exact::new(6, 16));
    }

    #[test]
    fn sampled_mode_agrees() {
        let and = BooleanFunction::from_fn(2, |x| x == 0b11).unwrap();
        let s = violation_probability_linearity_sampled(&and, 2, 200_000, 3).unwrap();
        match s {
            ViolationProbability::Sampled { interval, .. } => assert!(interval.contains(0.375)),
            _ => unreachable!(),
        }
        // 13 * 2 bits > 24, so this takes the sampled path.
        let f = BooleanFunction::parity(13, 5).unwrap();
        let v = violation_probability_linearity(&f, 2).unwrap();
        assert!(v.exact().is_none() && v.value() == 0.0);
    }
}
