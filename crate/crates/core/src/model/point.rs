use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported hypercube dimension.
pub const MAX_DIM: u32 = 30;

/// A vertex of `{0,1}^d`, packed into a machine word.
///
/// Coordinate `x[1]` is the least-significant bit of [`Point::bits`], `x[2]`
/// the next one, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    bits: u32,
    dim: u8,
}

impl Point {
    pub fn new(bits: u32, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if u64::from(bits) >> dim != 0 {
            return Err(Error::PointOutOfRange { bits: u64::from(bits), dim });
        }
        Ok(Self { bits, dim: dim as u8 })
    }

    pub fn zero(dim: u32) -> Result<Self> {
        Self::new(0, dim)
    }

    /// The standard basis vector `e_i` for a 1-based coordinate `i`.
    pub fn basis(dim: u32, i: u32) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::CoordinateOutOfRange { coord: i, dim });
        }
        Self::new(1 << (i - 1), dim)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn dim(self) -> u32 {
        u32::from(self.dim)
    }

    /// Value of the 1-based coordinate `x[i]`.
    #[inline]
    pub fn coord(self, i: u32) -> bool {
        debug_assert!(i >= 1 && i <= self.dim());
        (self.bits >> (i - 1)) & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn xor(self, other: Point) -> Result<Point> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(Point { bits: self.bits ^ other.bits, dim: self.dim })
    }
}

impl fmt::Display for Point {
    /// Prints `x[1] x[2] ... x[d]` left to right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim() {
            f.write_str(if self.coord(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn check_dim(dim: u32) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidDimension(dim));
    }
    Ok(())
}

/// XOR of a nonempty list of points of equal dimension.
pub fn xor_sum(points: &[Point]) -> Result<Point> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyInput("xor_sum"))?;
    rest.iter().try_fold(*first, |acc, p| acc.xor(*p))
}
