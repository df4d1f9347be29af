use rand::{Rng, RngCore};

use crate::adversaries::Strategy;
use crate::oracle::{AdversaryAction, AdversaryView};

/// Erases `t` uniformly random points that are not yet in the overlay.
#[derive(Clone, Debug)]
pub struct RandomEraser {
    t: usize,
}

impl RandomEraser {
    pub fn new(t: usize) -> Self {
        Self { t }
    }
}

impl Strategy for RandomEraser {
    fn name(&self) -> String {
        format!("random_eraser(t={})", self.t)
    }

    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut dyn RngCore) -> AdversaryAction {
        let domain = view.domain();
        let size = domain.size();
        let want = (self.t.min(view.budget) as u64).min(size - view.overlay.len() as u64) as usize;
        let mut picked: Vec<u64> = Vec::with_capacity(want);
        let fresh = |p: u64, picked: &[u64]| !view.overlay.contains(p) && !picked.contains(&p);
        'outer: while picked.len() < want {
            for _ in 0..64 {
                let p = domain.nth(rng.gen_range(0..size));
                if fresh(p, &picked) {
                    picked.push(p);
                    continue 'outer;
                }
            }
            // Nearly full domain: sample from the explicit complement.
            let free: Vec<u64> = (0..size).map(|k| domain.nth(k)).filter(|&p| fresh(p, &picked)).collect();
            let p = free[rng.gen_range(0..free.len())];
            picked.push(p);
        }
        AdversaryAction::spoil_all(picked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BooleanFunction;
    use crate::oracle::{OracleMode, OracleSession};

    fn run(seed: u64, t: usize, queries: u64) -> Vec<u64> {
        let f = BooleanFunction::zero(4).unwrap();
        let mut s = OracleSession::open(&f, t, OracleMode::Erasure, Box::new(RandomEraser::new(t)), seed);
        for k in 0..queries {
            s.query(k % 16).unwrap();
            assert_eq!(s.inspect().1.len() as u64, ((k + 1) * t as u64).min(16));
        }
        let mut erased: Vec<u64> = s.inspect().1.iter().map(|(p, _)| p).collect();
        erased.sort_unstable();
        erased
    }

    #[test]
    fn counts_and_saturation() {
        assert!(run(1, 0, 10).is_empty());
        assert_eq!(run(1, 3, 4).len(), 12);
        assert_eq!(run(1, 3, 10), (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(run(7, 2, 5), run(7, 2, 5));
        assert_ne!(run(7, 2, 5), run(8, 2, 5));
    }
}
