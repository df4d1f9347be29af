//! Exact and transform-based reference computations.
//!
//! Everything here works on the full truth table of an input and is meant for
//! calibrating experiments, not for testing. Exact probabilities are returned
//! as [`Ratio`]s of integer counts so that `>=` comparisons are exact.

mod fourier;
mod linearity;
mod quadratic;
mod sequences;

pub use fourier::{distance_to_linearity, distance_to_linearity_brute, linearity_disagreements, naive_spectrum, walsh_hadamard, FourierSpectrum};
pub use linearity::{violation_probability_linearity, violation_probability_linearity_sampled, ViolationProbability, EXACT_LIMIT_BITS, SAMPLES};
pub use quadratic::{distance_to_quadraticity, eval_t, eval_t_bits, quadratic_table, violation_probability_quadraticity, violation_probability_quadraticity_sampled};
pub use sequences::{distance_to_lipschitz_cube, distance_to_lipschitz_line, distance_to_sortedness, is_lipschitz_cube, is_lipschitz_line, is_sorted, lnds_len};

pub use num_rational::Ratio;

/// Exact probability as a reduced fraction of counts.
pub type Exact = Ratio<u64>;

/// Float value of an exact ratio, for reporting only.
pub fn to_f64(r: Exact) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
