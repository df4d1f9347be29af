use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ground_truth::{Exact, ViolationProbability, EXACT_LIMIT_BITS};
use crate::model::{BooleanFunction, Point};
use crate::stats::{wilson, CONFIDENCE};

/// Largest dimension for the enumeration over all quadratic polynomials.
pub const QUADRATIC_ENUM_DIM: u32 = 4;

/// `T_f(x, y, z)` on packed points: the mod-2 sum of `f` over the seven
/// nonempty XOR combinations of `x, y, z`.
#[inline]
pub fn eval_t_bits(f: &BooleanFunction, x: u32, y: u32, z: u32) -> u8 {
    f.get(x) ^ f.get(y) ^ f.get(z) ^ f.get(x ^ y) ^ f.get(x ^ z) ^ f.get(y ^ z) ^ f.get(x ^ y ^ z)
}

pub fn eval_t(f: &BooleanFunction, x: Point, y: Point, z: Point) -> Result<u8> {
    for p in [x, y, z] {
        if p.dim() != f.dim() {
            return Err(Error::DimensionMismatch { left: p.dim(), right: f.dim() });
        }
    }
    Ok(eval_t_bits(f, x.bits(), y.bits(), z.bits()))
}

/// `eta = Pr_{x,y,z}[T_f(x,y,z) = 1]`, exact for `3d <= 24` and sampled
/// otherwise.
pub fn violation_probability_quadraticity(f: &BooleanFunction) -> Result<ViolationProbability> {
    let bits = 3 * f.dim();
    if bits > EXACT_LIMIT_BITS {
        return violation_probability_quadraticity_sampled(f, crate::ground_truth::SAMPLES, 0);
    }
    let n = f.size() as u32;
    let violating: u64 = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut c = 0u64;
            for y in 0..n {
                for z in 0..n {
                    c += u64::from(eval_t_bits(f, x, y, z));
                }
            }
            c
        })
        .sum();
    Ok(ViolationProbability::Exact(Exact::new(violating, 1u64 << bits)))
}

pub fn violation_probability_quadraticity_sampled(f: &BooleanFunction, samples: u64, seed: u64) -> Result<ViolationProbability> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let n = f.size() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..samples)
        .filter(|_| eval_t_bits(f, rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)) == 1)
        .count() as u64;
    Ok(ViolationProbability::Sampled {
        estimate: hits as f64 / samples as f64,
        interval: wilson(hits, samples, CONFIDENCE),
        samples,
    })
}

/// Truth table, as a bitmask over the `2^d <= 16` points, of the quadratic
/// polynomial whose coefficient vector is `coeffs`. Coefficient bits list
/// `x[1], .., x[d]` first, then `x[i]x[j]` for `i < j` in lexicographic order.
/// There is no constant term.
pub fn quadratic_table(dim: u32, coeffs: u64) -> u32 {
    assert!(dim <= QUADRATIC_ENUM_DIM);
    let monomials = monomial_tables(dim);
    monomials.iter().enumerate().filter(|(i, _)| coeffs >> i & 1 == 1).fold(0, |acc, (_, m)| acc ^ m)
}

fn monomial_tables(dim: u32) -> Vec<u32> {
    let n = 1u32 << dim;
    let table = |pred: &dyn Fn(u32) -> bool| (0..n).filter(|&x| pred(x)).fold(0u32, |acc, x| acc | 1 << x);
    let mut out: Vec<u32> = (0..dim).map(|i| table(&|x| x >> i & 1 == 1)).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            out.push(table(&|x| x >> i & 1 == 1 && x >> j & 1 == 1));
        }
    }
    out
}

/// Minimum relative Hamming distance from `f` to a quadratic polynomial,
/// enumerating all `2^(d + d(d-1)/2)` of them.
pub fn distance_to_quadraticity(f: &BooleanFunction) -> Result<Exact> {
    let dim = f.dim();
    if dim > QUADRATIC_ENUM_DIM {
        return Err(Error::TooLarge { what: "quadratic enumeration dimension".into(), limit: QUADRATIC_ENUM_DIM.to_string() });
    }
    let truth = (0..f.size() as u32).filter(|&x| f.get(x) == 1).fold(0u32, |acc, x| acc | 1 << x);
    let monomials = monomial_tables(dim);
    let best = (0..1u64 << monomials.len())
        .map(|c| {
            let table = monomials.iter().enumerate().filter(|(i, _)| c >> i & 1 == 1).fold(0, |acc, (_, m)| acc ^ m);
            (table ^ truth).count_ones()
        })
        .min()
        .expect("at least the zero polynomial");
    Ok(Exact::new(u64::from(best), f.size()))
}
