//! Seeded constructors for test inputs.
//!
//! Every constructor is a pure function of its parameters and seed.

use std::path::PathBuf;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground_truth::{linearity_disagreements, Exact};
use crate::model::{BooleanFunction, FunctionFile, SequenceFunction, SequenceSource, TernaryFunction};

/// Resampling attempts before a far-function constructor gives up.
pub const MAX_RESAMPLES: usize = 1000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `chi_S` for a uniform `S`, with no constant term.
pub fn random_linear(d: u32, seed: u64) -> Result<BooleanFunction> {
    let mask = (rng(seed).next_u64() & ((1u64 << d) - 1)) as u32;
    BooleanFunction::parity(d, mask)
}

/// Quadratic polynomial with coefficient vector given as linear mask plus,
/// for each `i`, the mask of `j > i` with `x[i]x[j]` present.
pub fn quadratic_from_coeffs(d: u32, linear: u32, upper: &[u32]) -> Result<BooleanFunction> {
    BooleanFunction::from_fn(d, |x| {
        let mut v = (x & linear).count_ones();
        for (i, &row) in upper.iter().enumerate() {
            if x >> i & 1 == 1 {
                v += (x & row).count_ones();
            }
        }
        v & 1 == 1
    })
}

/// Uniform coefficients over the monomials `x[i]` and `x[i]x[j]`.
pub fn random_quadratic(d: u32, seed: u64) -> Result<BooleanFunction> {
    let mut r = rng(seed);
    let full = ((1u64 << d) - 1) as u32;
    let linear = r.next_u32() & full;
    let upper: Vec<u32> = (0..d).map(|i| r.next_u32() & full & !((2u64 << i) - 1) as u32).collect();
    quadratic_from_coeffs(d, linear, &upper)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidParameter(format!("no Boolean function is {eps}-far from linear")));
    }
    Ok(())
}

fn far_enough(f: &BooleanFunction, eps: f64) -> Result<bool> {
    let dist = linearity_disagreements(f)?;
    Ok(dist as f64 >= eps * f.size() as f64)
}

/// Uniform random function, resampled until its distance to linearity,
/// checked on the spectrum, is at least `eps`.
pub fn random_far_function(d: u32, eps: f64, seed: u64) -> Result<BooleanFunction> {
    check_eps(eps)?;
    let mut r = rng(seed);
    let words = (1usize << d).div_ceil(64);
    for _ in 0..MAX_RESAMPLES {
        let f = BooleanFunction::from_words(d, (0..words).map(|_| r.next_u64()).collect())?;
        if far_enough(&f, eps)? {
            return Ok(f);
        }
    }
    Err(Error::InvalidParameter(format!("no {eps}-far sample in {MAX_RESAMPLES} draws at d={d}")))
}

/// A random parity with `ceil(eps 2^d)` random points flipped, resampled until
/// the flips leave it at distance at least `eps`. Sits right at the
/// threshold, unlike uniform functions which are nearly 1/2-far.
pub fn noisy_linear(d: u32, eps: f64, seed: u64) -> Result<BooleanFunction> {
    check_eps(eps)?;
    let mut r = rng(seed);
    let n = 1usize << d;
    let flips = (eps * n as f64).ceil() as usize;
    for _ in 0..MAX_RESAMPLES {
        let base = BooleanFunction::parity(d, (r.next_u64() & (n as u64 - 1)) as u32)?;
        let points: Vec<u32> = sample(&mut r, n, flips).into_iter().map(|i| i as u32).collect();
        let f = base.with_flipped(&points);
        if far_enough(&f, eps)? {
            return Ok(f);
        }
    }
    Err(Error::InvalidParameter(format!("no {eps}-far noisy parity in {MAX_RESAMPLES} draws at d={d}")))
}

/// `x[1]x[2]x[3]`, ignoring the remaining coordinates.
pub fn far_cubic(d: u32) -> Result<BooleanFunction> {
    if d < 3 {
        return Err(Error::InvalidDimension(d));
    }
    BooleanFunction::from_fn(d, |x| x & 0b111 == 0b111)
}

fn even_len(n: u64, modulus: u64) -> Result<()> {
    if n == 0 || n % modulus != 0 {
        return Err(Error::InvalidParameter(format!("length {n} must be a positive multiple of {modulus}")));
    }
    Ok(())
}

/// Blocks `(2i-1, 2i)` get `(2i-1, 2i-1)`, `(2i-1, 2i)` or `(2i, 2i)`, each
/// with probability 1/3. Always sorted.
pub fn sortedness_dplus(n: u64, seed: u64) -> Result<SequenceFunction> {
    even_len(n, 2)?;
    let mut r = rng(seed);
    let mut v = Vec::with_capacity(n as usize);
    for i in 1..=n / 2 {
        let (lo, hi) = (2 * i - 1, 2 * i);
        v.extend(match r.gen_range(0..3) {
            0 => [lo, lo],
            1 => [lo, hi],
            _ => [hi, hi],
        });
    }
    SequenceFunction::from_values(v)
}

/// Blocks get `(2i, 2i-1)` with probability 1/3 and `(2i-1, 2i)` otherwise.
pub fn sortedness_dminus(n: u64, seed: u64) -> Result<SequenceFunction> {
    even_len(n, 2)?;
    let mut r = rng(seed);
    let mut v = Vec::with_capacity(n as usize);
    for i in 1..=n / 2 {
        let (lo, hi) = (2 * i - 1, 2 * i);
        v.extend(if r.gen_range(0..3) == 0 { [hi, lo] } else { [lo, hi] });
    }
    SequenceFunction::from_values(v)
}

// Pairs starting at i = 1 mod 4 and at i = 3 mod 4, each picked by a fair coin.
fn lipschitz_line(n: u64, seed: u64, first: [[u64; 2]; 2], second: [[u64; 2]; 2]) -> Result<SequenceFunction> {
    even_len(n, 4)?;
    let mut r = rng(seed);
    let mut v = Vec::with_capacity(n as usize);
    for _ in 0..n / 4 {
        v.extend(first[r.gen_range(0..2)]);
        v.extend(second[r.gen_range(0..2)]);
    }
    SequenceFunction::from_values(v)
}

pub fn lipschitz_line_dplus(n: u64, seed: u64) -> Result<SequenceFunction> {
    lipschitz_line(n, seed, [[0, 1], [1, 2]], [[1, 0], [2, 1]])
}

pub fn lipschitz_line_dminus(n: u64, seed: u64) -> Result<SequenceFunction> {
    lipschitz_line(n, seed, [[0, 2], [1, 1]], [[2, 0], [1, 1]])
}

fn lipschitz_cube(d: u32, seed: u64, options: [[u8; 2]; 2]) -> Result<TernaryFunction> {
    let n = 1u32 << d;
    let mut r = rng(seed);
    let mut v = vec![0u8; n as usize];
    for x in (0..n).filter(|x| x & 1 == 0) {
        let [a, b] = options[r.gen_range(0..2)];
        v[x as usize] = a;
        v[(x ^ 1) as usize] = b;
    }
    TernaryFunction::from_values(d, v)
}

/// Pairs `(x, x xor e_1)` with `x[1] = 0` get `(0, 1)` or `(1, 2)`.
pub fn lipschitz_cube_dplus(d: u32, seed: u64) -> Result<TernaryFunction> {
    lipschitz_cube(d, seed, [[0, 1], [1, 2]])
}

/// Pairs `(x, x xor e_1)` with `x[1] = 0` get `(0, 2)` or `(1, 1)`.
pub fn lipschitz_cube_dminus(d: u32, seed: u64) -> Result<TernaryFunction> {
    lipschitz_cube(d, seed, [[0, 2], [1, 1]])
}

/// `0^a 1^m 0^b` as an on-demand source.
#[derive(Clone, Copy, Debug)]
struct Step {
    start: u64,
    end: u64,
}

impl SequenceSource for Step {
    fn value(&self, i: u64) -> u64 {
        u64::from(self.start < i && i <= self.end)
    }
}

/// Boolean sequence `0^a 1^m 0^b` with `m = ceil(eps n)`, `b >= m` and a
/// seeded offset `a`. Its distance to sortedness is exactly `m / n`.
pub fn far_step(n: u64, eps: f64, seed: u64) -> Result<SequenceFunction> {
    let m = (eps * n as f64).ceil() as u64;
    if !(eps > 0.0) || 2 * m > n {
        return Err(Error::InvalidParameter(format!("cannot plant a {eps}-far step in length {n}")));
    }
    let a = rng(seed).gen_range(0..=n - 2 * m);
    SequenceFunction::generated(n, 2, 1, Arc::new(Step { start: a, end: a + m }))
}

/// Sorted Boolean sequence `0^a 1^(n-a)` with a seeded `a` in `1..n`.
pub fn sorted_step(n: u64, seed: u64) -> Result<SequenceFunction> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("sequence length {n} < 2")));
    }
    let a = rng(seed).gen_range(1..n);
    SequenceFunction::generated(n, 2, 1, Arc::new(Step { start: a, end: n }))
}

/// Exact distance of [`far_step`] and [`sorted_step`] outputs, without a scan.
pub fn step_distance(n: u64, eps: f64) -> Exact {
    Exact::new((eps * n as f64).ceil() as u64, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Linear,
    Quadratic,
    Far,
    NoisyLinear,
    Cubic,
    SortedStep,
    FarStep,
    SortDplus,
    SortDminus,
    LipLineDplus,
    LipLineDminus,
    LipCubeDplus,
    LipCubeDminus,
    File,
}

impl InputKind {
    pub const ALL: &'static [(&'static str, InputKind)] = &[
        ("linear", InputKind::Linear),
        ("quadratic", InputKind::Quadratic),
        ("far", InputKind::Far),
        ("noisy_linear", InputKind::NoisyLinear),
        ("cubic", InputKind::Cubic),
        ("sorted_step", InputKind::SortedStep),
        ("far_step", InputKind::FarStep),
        ("sort_dplus", InputKind::SortDplus),
        ("sort_dminus", InputKind::SortDminus),
        ("lip_line_dplus", InputKind::LipLineDplus),
        ("lip_line_dminus", InputKind::LipLineDminus),
        ("lip_cube_dplus", InputKind::LipCubeDplus),
        ("lip_cube_dminus", InputKind::LipCubeDminus),
        ("file", InputKind::File),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, k)| *k == self).map(|(n, _)| *n).expect("listed")
    }

    /// Whether instances depend on the seed. Fixed inputs are built once per
    /// experiment rather than once per trial.
    pub fn is_random(self) -> bool {
        !matches!(self, InputKind::Cubic | InputKind::File)
    }
}

impl std::str::FromStr for InputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, k)| *k)
            .ok_or_else(|| Error::UnknownName { kind: "input kind", name: s.to_string() })
    }
}

/// What to generate. Unused parameters are ignored by each kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputSpec {
    pub kind: InputKind,
    pub d: u32,
    pub n: u64,
    pub eps: f64,
    pub path: Option<PathBuf>,
}

impl InputSpec {
    pub fn cube(kind: InputKind, d: u32, eps: f64) -> Self {
        Self { kind, d, n: 0, eps, path: None }
    }

    pub fn line(kind: InputKind, n: u64, eps: f64) -> Self {
        Self { kind, d: 0, n, eps, path: None }
    }

    pub fn generate(&self, seed: u64) -> Result<FunctionFile> {
        use FunctionFile::{Bool, Seq, Ternary};
        Ok(match self.kind {
            InputKind::Linear => Bool(random_linear(self.d, seed)?),
            InputKind::Quadratic => Bool(random_quadratic(self.d, seed)?),
            InputKind::Far => Bool(random_far_function(self.d, self.eps, seed)?),
            InputKind::NoisyLinear => Bool(noisy_linear(self.d, self.eps, seed)?),
            InputKind::Cubic => Bool(far_cubic(self.d)?),
            InputKind::SortedStep => Seq(sorted_step(self.n, seed)?),
            InputKind::FarStep => Seq(far_step(self.n, self.eps, seed)?),
            InputKind::SortDplus => Seq(sortedness_dplus(self.n, seed)?),
            InputKind::SortDminus => Seq(sortedness_dminus(self.n, seed)?),
            InputKind::LipLineDplus => Seq(lipschitz_line_dplus(self.n, seed)?),
            InputKind::LipLineDminus => Seq(lipschitz_line_dminus(self.n, seed)?),
            InputKind::LipCubeDplus => Ternary(lipschitz_cube_dplus(self.d, seed)?),
            InputKind::LipCubeDminus => Ternary(lipschitz_cube_dminus(self.d, seed)?),
            InputKind::File => {
                let path = self.path.as_ref().ok_or_else(|| Error::InvalidParameter("input=file needs a path".into()))?;
                FunctionFile::read(path)?
            }
        })
    }
}
