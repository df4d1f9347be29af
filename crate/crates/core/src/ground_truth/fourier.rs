use crate::error::{Error, Result};
use crate::ground_truth::Exact;
use crate::model::BooleanFunction;

/// Largest dimension the transform accepts (2^24 coefficients).
pub const MAX_TRANSFORM_DIM: u32 = 24;

/// Fourier spectrum of `g(x) = (-1)^f(x)`.
///
/// Coefficients are kept as integer sums `2^d * ghat(S)` so that comparisons
/// between them are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSpectrum {
    dim: u32,
    sums: Vec<i32>,
}

impl FourierSpectrum {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `sum_x g(x) chi_S(x)`, an integer in `[-2^d, 2^d]`.
    pub fn sum(&self, mask: u32) -> i64 {
        i64::from(self.sums[mask as usize])
    }

    pub fn coeff(&self, mask: u32) -> f64 {
        f64::from(self.sums[mask as usize]) / (1u64 << self.dim) as f64
    }

    pub fn coeffs(&self) -> Vec<f64> {
        (0..self.sums.len() as u32).map(|s| self.coeff(s)).collect()
    }

    pub fn max_sum(&self) -> (u32, i64) {
        let (mask, &v) = self.sums.iter().enumerate().max_by_key(|(i, &v)| (v, std::cmp::Reverse(*i))).expect("non-empty spectrum");
        (mask as u32, i64::from(v))
    }

    /// `sum_S ghat(S)^2`, which is 1 by Parseval.
    pub fn energy(&self) -> f64 {
        let n = (1u64 << self.dim) as f64;
        self.sums.iter().map(|&s| f64::from(s) * f64::from(s)).sum::<f64>() / (n * n)
    }
}

/// In-place fast Walsh-Hadamard transform.
pub fn walsh_hadamard(f: &BooleanFunction) -> Result<FourierSpectrum> {
    let dim = f.dim();
    if dim > MAX_TRANSFORM_DIM {
        return Err(Error::TooLarge { what: "transform dimension".into(), limit: MAX_TRANSFORM_DIM.to_string() });
    }
    let mut a: Vec<i32> = f.values().map(|b| 1 - 2 * i32::from(b)).collect();
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*u, *v);
                *u = x + y;
                *v = x - y;
            }
        }
        h *= 2;
    }
    Ok(FourierSpectrum { dim, sums: a })
}

/// Direct `O(4^d)` transform from the definition, used as a cross-check.
pub fn naive_spectrum(f: &BooleanFunction) -> FourierSpectrum {
    let n = f.size() as u32;
    let sums = (0..n)
        .map(|s| {
            (0..n)
                .map(|x| {
                    let sign = (u32::from(f.get(x)) + (x & s).count_ones()) % 2;
                    1 - 2 * sign as i32
                })
                .sum()
        })
        .collect();
    FourierSpectrum { dim: f.dim(), sums }
}

/// Number of points where `f` differs from its nearest parity.
pub fn linearity_disagreements(f: &BooleanFunction) -> Result<u64> {
    let spec = walsh_hadamard(f)?;
    let (_, best) = spec.max_sum();
    Ok(((1i64 << f.dim()) - best) as u64 / 2)
}

/// `1/2 - 1/2 max_S ghat(S)`, as an exact fraction of the domain.
pub fn distance_to_linearity(f: &BooleanFunction) -> Result<Exact> {
    Ok(Exact::new(linearity_disagreements(f)?, f.size()))
}

/// Minimum Hamming distance to the `2^d` parities, by enumeration.
pub fn distance_to_linearity_brute(f: &BooleanFunction) -> Result<Exact> {
    let n = f.size();
    let best = (0..n as u32)
        .map(|s| BooleanFunction::parity(f.dim(), s).and_then(|p| f.hamming(&p)))
        .try_fold(u64::MAX, |m, h| h.map(|h| m.min(h)))?;
    Ok(Exact::new(best, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn majority3() -> BooleanFunction {
        BooleanFunction::from_fn(3, |x| x.count_ones() >= 2).unwrap()
    }

    #[test]
    fn trivial_spectra() {
        let s = walsh_hadamard(&BooleanFunction::zero(4).unwrap()).unwrap();
        assert_eq!(s.coeff(0), 1.0);
        assert!((1..16).all(|m| s.coeff(m) == 0.0));
        let s = walsh_hadamard(&BooleanFunction::parity(4, 0b0001).unwrap()).unwrap();
        assert_eq!(s.coeff(1), 1.0);
        assert!((0..16).filter(|&m| m != 1).all(|m| s.coeff(m) == 0.0));
    }

    #[test]
    fn majority_spectrum() {
        let f = majority3();
        let s = walsh_hadamard(&f).unwrap();
        assert_eq!(s, naive_spectrum(&f));
        // g = (-1)^MAJ = -MAJ_{+-1}; weights 1/2 on singletons, -1/2 on the triple.
        for m in [1, 2, 4] {
            assert_eq!(s.coeff(m), 0.5);
        }
        assert_eq!(s.coeff(7), -0.5);
        for m in [0, 3, 5, 6] {
            assert_eq!(s.coeff(m), 0.0);
        }
    }

    #[test]
    fn distances() {
        assert_eq!(distance_to_linearity(&majority3()).unwrap(), Exact::new(1, 4));
        let shifted = BooleanFunction::from_fn(5, |x| x & 1 == 0).unwrap();
        assert_eq!(distance_to_linearity(&shifted).unwrap(), Exact::new(1, 2));
        assert_eq!(distance_to_linearity(&BooleanFunction::parity(5, 0b10110).unwrap()).unwrap(), Exact::new(0, 1));
    }

    #[test]
    fn too_large() {
        // Dimension 25 tables are 4 MiB; cheap enough to build once.
        let f = BooleanFunction::zero(25).unwrap();
        assert!(walsh_hadamard(&f).is_err());
    }
}
