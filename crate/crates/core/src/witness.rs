//! Witnesses of non-membership and their independent validation.
//!
//! A witness is a list of queried points together with values actually
//! obtained for them. It is valid when no function with the property agrees
//! with every `(point, value)` pair. Validation here never looks at the
//! hidden input and does not reuse tester code: linear and quadratic
//! consistency is decided by Gaussian elimination over GF(2).

use serde::{Deserialize, Serialize};

use crate::model::Domain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PropertyId {
    Linearity,
    Quadraticity,
    Sortedness,
    LipschitzLine,
    LipschitzCube,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub property: PropertyId,
    pub domain: Domain,
    pub points: Vec<u64>,
    pub values: Vec<u64>,
}

impl Witness {
    pub fn new(property: PropertyId, domain: Domain, pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let (points, values) = pairs.into_iter().unzip();
        Self { property, domain, points, values }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.points.iter().copied().zip(self.values.iter().copied())
    }
}

// Needed for serde on Witness.
impl Serialize for Domain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&match self {
            Domain::Cube { dim } => format!("cube:{dim}"),
            Domain::Line { len } => format!("line:{len}"),
        })
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("bad domain `{s}`"));
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u64 = n.parse().map_err(|_| bad())?;
        match kind {
            "cube" => Ok(Domain::Cube { dim: n as u32 }),
            "line" => Ok(Domain::Line { len: n }),
            _ => Err(bad()),
        }
    }
}

/// Whether the linear system `A s = b` over GF(2) has a solution. Each row is
/// a bitset of coefficients followed by the right-hand side bit.
pub fn gf2_consistent(rows: &[(Vec<u64>, bool)], unknowns: usize) -> bool {
    let words = unknowns.div_ceil(64);
    let mut pivots: Vec<(usize, Vec<u64>, bool)> = Vec::new();
    for (coeffs, rhs) in rows {
        let mut row = coeffs.clone();
        row.resize(words, 0);
        let mut rhs = *rhs;
        for (col, prow, prhs) in &pivots {
            if row[col / 64] >> (col % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(prow) {
                    *a ^= b;
                }
                rhs ^= prhs;
            }
        }
        match (0..unknowns).find(|c| row[c / 64] >> (c % 64) & 1 == 1) {
            Some(col) => {
                // Keep the basis fully reduced on the new pivot column.
                for (_, prow, prhs) in pivots.iter_mut() {
                    if prow[col / 64] >> (col % 64) & 1 == 1 {
                        for (a, b) in prow.iter_mut().zip(&row) {
                            *a ^= b;
                        }
                        *prhs ^= rhs;
                    }
                }
                pivots.push((col, row, rhs));
            }
            None if rhs => return false,
            None => {}
        }
    }
    true
}

fn bitset(bits: impl IntoIterator<Item = usize>, unknowns: usize) -> Vec<u64> {
    let mut v = vec![0u64; unknowns.div_ceil(64)];
    for b in bits {
        v[b / 64] |= 1 << (b % 64);
    }
    v
}

/// Is some parity `x -> <s, x>` consistent with all pairs?
pub fn consistent_with_linear(dim: u32, pairs: &[(u64, u64)]) -> bool {
    let n = dim as usize;
    let rows: Vec<_> = pairs
        .iter()
        .map(|&(x, v)| (bitset((0..n).filter(|i| x >> i & 1 == 1), n), v & 1 == 1))
        .collect();
    pairs.iter().all(|&(_, v)| v <= 1) && gf2_consistent(&rows, n)
}

/// Is some polynomial made of monomials `x[i]` and `x[i]x[j]` (no constant
/// term) consistent with all pairs?
pub fn consistent_with_quadratic(dim: u32, pairs: &[(u64, u64)]) -> bool {
    let n = dim as usize;
    let unknowns = n + n * (n - 1) / 2;
    let rows: Vec<_> = pairs
        .iter()
        .map(|&(x, v)| {
            let on: Vec<usize> = (0..n).filter(|i| x >> i & 1 == 1).collect();
            let mut bits = on.clone();
            let mut base = n;
            for i in 0..n {
                for j in i + 1..n {
                    if x >> i & 1 == 1 && x >> j & 1 == 1 {
                        bits.push(base + (j - i - 1));
                    }
                }
                base += n - i - 1;
            }
            (bitset(bits, unknowns), v & 1 == 1)
        })
        .collect();
    pairs.iter().all(|&(_, v)| v <= 1) && gf2_consistent(&rows, unknowns)
}

fn l1(domain: Domain, a: u64, b: u64) -> u64 {
    match domain {
        Domain::Cube { .. } => u64::from((a ^ b).count_ones()),
        Domain::Line { .. } => a.abs_diff(b),
    }
}

/// Independent check that no function with the witness's property agrees
/// with it.
pub fn validate(w: &Witness) -> bool {
    if w.points.len() != w.values.len() || w.points.iter().any(|p| !w.domain.contains(*p)) {
        return false;
    }
    let pairs: Vec<(u64, u64)> = w.pairs().collect();
    // The same point with two different values is inconsistent with any function.
    let conflicting = pairs.iter().any(|&(p, v)| pairs.iter().any(|&(q, u)| p == q && u != v));
    match (w.property, w.domain) {
        (PropertyId::Linearity, Domain::Cube { dim }) => conflicting || !consistent_with_linear(dim, &pairs),
        (PropertyId::Quadraticity, Domain::Cube { dim }) => conflicting || !consistent_with_quadratic(dim, &pairs),
        (PropertyId::Sortedness, Domain::Line { .. }) => {
            conflicting || pairs.iter().any(|&(u, fu)| pairs.iter().any(|&(v, fv)| u < v && fu > fv))
        }
        (PropertyId::LipschitzLine | PropertyId::LipschitzCube, domain) => {
            conflicting || pairs.iter().any(|&(u, fu)| pairs.iter().any(|&(v, fv)| fu.abs_diff(fv) > l1(domain, u, v)))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(dim: u32) -> Domain {
        Domain::Cube { dim }
    }

    #[test]
    fn linear_consistency() {
        // f(x) = x[1] + x[3]
        let f = |x: u64| ((x & 1) ^ (x >> 2 & 1)) as u64;
        let pts = [0b001u64, 0b010, 0b100, 0b111, 0b101];
        let pairs: Vec<_> = pts.iter().map(|&x| (x, f(x))).collect();
        assert!(consistent_with_linear(3, &pairs));
        let mut bad = pairs.clone();
        bad[3].1 ^= 1;
        assert!(!consistent_with_linear(3, &bad));
        // f(0) must be 0 for a parity.
        assert!(!consistent_with_linear(3, &[(0, 1)]));
    }

    #[test]
    fn parity_violation_is_a_witness() {
        // f(x) = x[1] + 1: f(x) + f(y) != f(x ^ y) always.
        let g = |x: u64| (x & 1) ^ 1;
        let (x, y) = (0b0110u64, 0b1011u64);
        let w = Witness::new(PropertyId::Linearity, cube(4), [(x, g(x)), (y, g(y)), (x ^ y, g(x ^ y))]);
        assert!(validate(&w));
    }

    #[test]
    fn quadratic_consistency() {
        // f = x1 x2 + x3 is quadratic; x1 x2 x3 is not on the span of e1,e2,e3.
        let q = |x: u64| ((x & 1) & (x >> 1 & 1)) ^ (x >> 2 & 1);
        let c = |x: u64| (x & 1) & (x >> 1 & 1) & (x >> 2 & 1);
        let span = [0b001u64, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];
        let wq = Witness::new(PropertyId::Quadraticity, cube(3), span.iter().map(|&x| (x, q(x))));
        let wc = Witness::new(PropertyId::Quadraticity, cube(3), span.iter().map(|&x| (x, c(x))));
        assert!(!validate(&wq));
        assert!(validate(&wc));
    }

    #[test]
    fn order_and_lipschitz() {
        let line = Domain::Line { len: 10 };
        assert!(validate(&Witness::new(PropertyId::Sortedness, line, [(2, 5), (7, 3)])));
        assert!(!validate(&Witness::new(PropertyId::Sortedness, line, [(2, 3), (7, 3)])));
        assert!(validate(&Witness::new(PropertyId::LipschitzLine, line, [(1, 0), (2, 2)])));
        assert!(!validate(&Witness::new(PropertyId::LipschitzLine, line, [(1, 0), (3, 2)])));
        assert!(validate(&Witness::new(PropertyId::LipschitzCube, cube(3), [(0b000, 0), (0b001, 2)])));
        assert!(!validate(&Witness::new(PropertyId::LipschitzCube, cube(3), [(0b000, 0), (0b011, 2)])));
    }

    #[test]
    fn serde_round_trip() {
        let w = Witness::new(PropertyId::Sortedness, Domain::Line { len: 9 }, [(1, 2), (3, 1)]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<Witness>(&s).unwrap(), w);
    }
}
