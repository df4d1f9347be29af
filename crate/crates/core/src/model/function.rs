use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::point::{check_dim, Point};

/// Index set of an input function.
///
/// Cube indices are the packed bits of a [`Point`]; line indices are
/// 1-based positions `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Cube { dim: u32 },
    Line { len: u64 },
}

impl Domain {
    pub fn size(&self) -> u64 {
        match *self {
            Domain::Cube { dim } => 1u64 << dim,
            Domain::Line { len } => len,
        }
    }

    pub fn contains(&self, index: u64) -> bool {
        match *self {
            Domain::Cube { dim } => index >> dim == 0,
            Domain::Line { len } => index >= 1 && index <= len,
        }
    }

    /// The `k`-th element (0-based) in index order.
    pub fn nth(&self, k: u64) -> u64 {
        match self {
            Domain::Cube { .. } => k,
            Domain::Line { .. } => k + 1,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Cube { dim } => write!(f, "{{0,1}}^{dim}"),
            Domain::Line { len } => write!(f, "[{len}]"),
        }
    }
}

/// Read-only access to a hidden input, as seen by oracles and adversaries.
pub trait Input: Send + Sync {
    fn domain(&self) -> Domain;

    /// Value at an in-domain index. Callers check membership first.
    fn value(&self, index: u64) -> u64;

    /// Largest value the range may take; the corruption oracle uses it to
    /// pick replacement values.
    fn max_value(&self) -> u64;
}

/// Explicit truth table of `f: {0,1}^d -> {0,1}`, one bit per point.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    dim: u32,
    words: Arc<[u64]>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(d={}, weight={})", self.dim, self.weight())
    }
}

fn word_count(dim: u32) -> usize {
    ((1usize << dim) + 63) / 64
}

// Bit pattern of the parity of the low `min(dim, 6)` coordinates selected by
// `mask`, over the 64 points that share one table word.
fn low_parity_word(mask: u32) -> u64 {
    (0..64u32).fold(0u64, |w, x| w | (u64::from((x & mask).count_ones() & 1) << x))
}

impl BooleanFunction {
    pub fn from_fn(dim: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        check_dim(dim)?;
        let size = 1u64 << dim;
        let mut words = vec![0u64; word_count(dim)];
        for x in 0..size {
            if f(x as u32) {
                words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(Self { dim, words: words.into() })
    }

    /// Builds a table from packed words; bits beyond `2^dim` must be zero.
    pub fn from_words(dim: u32, mut words: Vec<u64>) -> Result<Self> {
        check_dim(dim)?;
        if words.len() != word_count(dim) {
            return Err(Error::InvalidParameter(format!(
                "table for d={dim} needs {} words, got {}",
                word_count(dim),
                words.len()
            )));
        }
        if dim < 6 {
            words[0] &= (1u64 << (1u32 << dim)) - 1;
        }
        Ok(Self { dim, words: words.into() })
    }

    pub fn from_values(dim: u32, values: &[u8]) -> Result<Self> {
        check_dim(dim)?;
        if values.len() as u64 != 1u64 << dim {
            return Err(Error::InvalidParameter(format!(
                "table for d={dim} needs {} entries, got {}",
                1u64 << dim,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v > 1) {
            return Err(Error::InvalidParameter(format!("Boolean table entry {v}")));
        }
        Self::from_fn(dim, |x| values[x as usize] == 1)
    }

    pub fn zero(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, words: vec![0u64; word_count(dim)].into() })
    }

    /// The parity `chi_S(x) = <x, mask> mod 2`, built word by word.
    pub fn parity(dim: u32, mask: u32) -> Result<Self> {
        check_dim(dim)?;
        if u64::from(mask) >> dim != 0 {
            return Err(Error::PointOutOfRange { bits: u64::from(mask), dim });
        }
        let low = low_parity_word(mask & 63);
        let high = mask >> 6;
        let words = (0..word_count(dim) as u32)
            .map(|w| if (w & high).count_ones() & 1 == 1 { !low } else { low })
            .collect::<Vec<_>>();
        Self::from_words(dim, words)
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dim
    }

    /// Unchecked-dimension lookup by packed bits.
    #[inline]
    pub fn get(&self, bits: u32) -> u8 {
        ((self.words[(bits >> 6) as usize] >> (bits & 63)) & 1) as u8
    }

    pub fn eval(&self, x: Point) -> Result<u8> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: x.dim(), right: self.dim });
        }
        Ok(self.get(x.bits()))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn values(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.size()).map(move |x| self.get(x as u32))
    }

    /// Number of points where the two tables differ.
    pub fn hamming(&self, other: &BooleanFunction) -> Result<u64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self.words.iter().zip(other.words.iter()).map(|(a, b)| u64::from((a ^ b).count_ones())).sum())
    }

    pub fn xor(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let words = self.words.iter().zip(other.words.iter()).map(|(a, b)| a ^ b).collect();
        Self::from_words(self.dim, words)
    }

    pub fn with_flipped(&self, points: &[u32]) -> BooleanFunction {
        let mut words = self.words.to_vec();
        for &x in points {
            words[(x >> 6) as usize] ^= 1 << (x & 63);
        }
        Self { dim: self.dim, words: words.into() }
    }
}

impl Input for BooleanFunction {
    fn domain(&self) -> Domain {
        Domain::Cube { dim: self.dim }
    }

    fn value(&self, index: u64) -> u64 {
        u64::from(self.get(index as u32))
    }

    fn max_value(&self) -> u64 {
        1
    }
}

/// `f: {0,1}^d -> {0,1,2}` stored one byte per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryFunction {
    dim: u32,
    values: Arc<[u8]>,
}

impl TernaryFunction {
    pub fn from_values(dim: u32, values: Vec<u8>) -> Result<Self> {
        check_dim(dim)?;
        if values.len() as u64 != 1u64 << dim {
            return Err(Error::InvalidParameter(format!(
                "table for d={dim} needs {} entries, got {}",
                1u64 << dim,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v > 2) {
            return Err(Error::InvalidParameter(format!("ternary table entry {v}")));
        }
        Ok(Self { dim, values: values.into() })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    #[inline]
    pub fn get(&self, bits: u32) -> u8 {
        self.values[bits as usize]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }
}

impl Input for TernaryFunction {
    fn domain(&self) -> Domain {
        Domain::Cube { dim: self.dim }
    }

    fn value(&self, index: u64) -> u64 {
        u64::from(self.values[index as usize])
    }

    fn max_value(&self) -> u64 {
        2
    }
}

/// Value source for sequences too long to materialize.
pub trait SequenceSource: Send + Sync {
    /// Value at the 1-based position `i`.
    fn value(&self, i: u64) -> u64;
}

#[derive(Clone)]
enum SequenceStorage {
    Table(Arc<[u64]>),
    Generated(Arc<dyn SequenceSource>),
}

/// `f: [n] -> N`, either tabulated or computed on demand.
#[derive(Clone)]
pub struct SequenceFunction {
    len: u64,
    distinct: u64,
    max: u64,
    storage: SequenceStorage,
}

impl fmt::Debug for SequenceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.storage {
            SequenceStorage::Table(_) => "table",
            SequenceStorage::Generated(_) => "generated",
        };
        write!(f, "SequenceFunction(n={}, r={}, {kind})", self.len, self.distinct)
    }
}

impl PartialEq for SequenceFunction {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && (1..=self.len).all(|i| self.at(i) == other.at(i))
    }
}

impl SequenceFunction {
    pub fn from_values(values: Vec<u64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(format!("sequence length {} < 2", values.len())));
        }
        let distinct = values.iter().collect::<BTreeSet<_>>().len() as u64;
        let max = values.iter().copied().max().unwrap_or(0);
        Ok(Self { len: values.len() as u64, distinct, max, storage: SequenceStorage::Table(values.into()) })
    }

    /// A generator-backed sequence. `distinct` and `max` describe the source
    /// and are trusted.
    pub fn generated(len: u64, distinct: u64, max: u64, source: Arc<dyn SequenceSource>) -> Result<Self> {
        if len < 2 || distinct == 0 {
            return Err(Error::InvalidParameter(format!("generated sequence n={len}, r={distinct}")));
        }
        Ok(Self { len, distinct, max, storage: SequenceStorage::Generated(source) })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of distinct values, `r`.
    pub fn distinct(&self) -> u64 {
        self.distinct
    }

    /// Value at the 1-based position `i`.
    #[inline]
    pub fn at(&self, i: u64) -> u64 {
        debug_assert!(i >= 1 && i <= self.len);
        match &self.storage {
            SequenceStorage::Table(v) => v[(i - 1) as usize],
            SequenceStorage::Generated(s) => s.value(i),
        }
    }

    pub fn get(&self, i: u64) -> Result<u64> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfDomain { index: i, domain: Domain::Line { len: self.len }.to_string() });
        }
        Ok(self.at(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.len).map(move |i| self.at(i))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl Input for SequenceFunction {
    fn domain(&self) -> Domain {
        Domain::Line { len: self.len }
    }

    fn value(&self, index: u64) -> u64 {
        self.at(index)
    }

    fn max_value(&self) -> u64 {
        self.max
    }
}
