use crate::error::{Error, Result};
use crate::ground_truth::Exact;
use crate::model::{SequenceFunction, TernaryFunction};

/// Length of the longest non-decreasing subsequence, `O(n log n)`.
pub fn lnds_len(values: impl IntoIterator<Item = u64>) -> u64 {
    // tails[k]: smallest possible last value of a non-decreasing run of length k+1.
    let mut tails: Vec<u64> = Vec::new();
    for v in values {
        let pos = tails.partition_point(|&t| t <= v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len() as u64
}

pub fn is_sorted(seq: &SequenceFunction) -> bool {
    seq.iter().zip(seq.iter().skip(1)).all(|(a, b)| a <= b)
}

/// `(n - LNDS) / n`.
pub fn distance_to_sortedness(seq: &SequenceFunction) -> Exact {
    Exact::new(seq.len() - lnds_len(seq.iter()), seq.len())
}

pub fn is_lipschitz_line(values: &[u64]) -> bool {
    values.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1)
}

/// Fewest changes making the sequence Lipschitz, over values `0..=max`.
fn lipschitz_line_changes(values: &[u64]) -> u64 {
    let top = values.iter().copied().max().unwrap_or(0) as usize;
    let mut cost: Vec<u64> = (0..=top).map(|v| u64::from(values[0] != v as u64)).collect();
    for &x in &values[1..] {
        cost = (0..=top)
            .map(|v| {
                let lo = v.saturating_sub(1);
                let hi = (v + 1).min(top);
                let prev = cost[lo..=hi].iter().copied().min().expect("non-empty window");
                prev + u64::from(x != v as u64)
            })
            .collect();
    }
    cost.into_iter().min().unwrap_or(0)
}

/// Relative distance to the nearest Lipschitz sequence, by dynamic
/// programming over (position, assigned value).
pub fn distance_to_lipschitz_line(seq: &SequenceFunction) -> Exact {
    let v = seq.to_vec();
    Exact::new(lipschitz_line_changes(&v), seq.len())
}

/// Largest dimension for the cube enumeration.
pub const LIPSCHITZ_CUBE_DIM: u32 = 3;

/// On the cube, Lipschitz under the `l1` metric is equivalent to all edges
/// changing the value by at most one.
pub fn is_lipschitz_cube(dim: u32, values: &[u8]) -> bool {
    (0..values.len()).all(|x| (0..dim).all(|i| values[x].abs_diff(values[x ^ (1 << i)]) <= 1))
}

/// Relative distance to the nearest Lipschitz `{0,1}^d -> {0,1,2}` function,
/// enumerating all `3^(2^d)` candidates.
pub fn distance_to_lipschitz_cube(f: &TernaryFunction) -> Result<Exact> {
    let dim = f.dim();
    if dim > LIPSCHITZ_CUBE_DIM {
        return Err(Error::TooLarge { what: "Lipschitz cube dimension".into(), limit: LIPSCHITZ_CUBE_DIM.to_string() });
    }
    let n = 1usize << dim;
    let target = f.values();
    let mut candidate = vec![0u8; n];
    let mut best = n as u64;
    for code in 0..3u32.pow(n as u32) {
        let mut c = code;
        for slot in candidate.iter_mut() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        if is_lipschitz_cube(dim, &candidate) {
            let d = candidate.iter().zip(target).filter(|(a, b)| a != b).count() as u64;
            best = best.min(d);
        }
    }
    Ok(Exact::new(best, n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> SequenceFunction {
        SequenceFunction::from_values(v.to_vec()).unwrap()
    }

    #[test]
    fn sortedness_examples() {
        assert_eq!(distance_to_sortedness(&seq(&[1, 2, 2, 5])), Exact::new(0, 1));
        assert_eq!(distance_to_sortedness(&seq(&[2, 1])), Exact::new(1, 2));
        assert_eq!(lnds_len([3, 1, 2, 2, 0, 4]), 4);
    }

    #[test]
    fn lipschitz_line_examples() {
        assert_eq!(distance_to_lipschitz_line(&seq(&[0, 1, 2, 1])), Exact::new(0, 1));
        assert_eq!(distance_to_lipschitz_line(&seq(&[0, 2])), Exact::new(1, 2));
        assert_eq!(distance_to_lipschitz_line(&seq(&[0, 2, 2, 0])), Exact::new(1, 2));
    }

    #[test]
    fn lipschitz_cube_examples() {
        let f = TernaryFunction::from_values(1, vec![0, 2]).unwrap();
        assert_eq!(distance_to_lipschitz_cube(&f).unwrap(), Exact::new(1, 2));
        let g = TernaryFunction::from_values(2, vec![0, 1, 1, 2]).unwrap();
        assert_eq!(distance_to_lipschitz_cube(&g).unwrap(), Exact::new(0, 1));
        let h = TernaryFunction::from_values(4, vec![0; 16]).unwrap();
        assert!(distance_to_lipschitz_cube(&h).is_err());
    }
}
