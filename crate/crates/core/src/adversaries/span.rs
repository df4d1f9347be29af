use std::collections::HashSet;

use itertools::Itertools;
use rand::RngCore;

use crate::adversaries::{QueriedPoints, Strategy};
use crate::model::Domain;
use crate::oracle::{AdversaryAction, AdversaryView};

/// Cap on subsets of size >= 3 examined in one call. Only reachable when
/// every pair sum is already spoiled.
const MAX_SCAN: usize = 1 << 16;

/// After every query, spoils the next `t` sums `XOR_{x in T} x` over subsets
/// `T` of the distinct queried points, in a fixed order: by size (pairs
/// first, singletons never), then lexicographically by query position.
/// Subsets whose sum is already spoiled are skipped.
#[derive(Clone, Debug)]
pub struct SpanEraser {
    t: usize,
    queried: QueriedPoints,
    // next_partner[i]: every pair (i, j) with j < next_partner[i] is spoiled.
    next_partner: Vec<usize>,
}

impl SpanEraser {
    pub fn new(t: usize) -> Self {
        Self { t, queried: QueriedPoints::default(), next_partner: Vec::new() }
    }
}

impl Strategy for SpanEraser {
    fn name(&self) -> String {
        format!("span_eraser(t={})", self.t)
    }

    fn act(&mut self, view: &AdversaryView<'_>, _: &mut dyn RngCore) -> AdversaryAction {
        if !matches!(view.domain(), Domain::Cube { .. }) {
            return AdversaryAction::none();
        }
        self.queried.sync(view);
        let pts = self.queried.points();
        let k = pts.len();
        while self.next_partner.len() < k {
            let i = self.next_partner.len();
            self.next_partner.push(i + 1);
        }
        // Never more than the points not yet spoiled.
        let free = view.domain().size().saturating_sub(view.overlay.len() as u64);
        let want = self.t.min(view.budget).min(free as usize);
        if want == 0 {
            return AdversaryAction::none();
        }
        let mut chosen: Vec<u64> = Vec::with_capacity(want);
        let mut chosen_set: HashSet<u64> = HashSet::new();
        let mut take = |p: u64, chosen: &mut Vec<u64>| {
            if !view.overlay.contains(p) && chosen_set.insert(p) {
                chosen.push(p);
            }
        };

        for i in 0..k {
            while chosen.len() < want && self.next_partner[i] < k {
                let j = self.next_partner[i];
                self.next_partner[i] += 1;
                take(pts[i] ^ pts[j], &mut chosen);
            }
            if chosen.len() == want {
                return AdversaryAction::spoil_all(chosen);
            }
        }

        let mut scanned = 0;
        for size in 3..=k {
            for subset in (0..k).combinations(size) {
                if chosen.len() == want || scanned == MAX_SCAN {
                    return AdversaryAction::spoil_all(chosen);
                }
                scanned += 1;
                take(subset.iter().fold(0, |acc, &i| acc ^ pts[i]), &mut chosen);
            }
        }
        AdversaryAction::spoil_all(chosen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BooleanFunction, QueryAnswer};
    use crate::oracle::{OracleMode, OracleSession};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn overlay(s: &OracleSession<'_>) -> HashSet<u64> {
        s.inspect().1.iter().map(|(p, _)| p).collect()
    }

    #[test]
    fn single_query_erases_nothing() {
        let f = BooleanFunction::zero(8).unwrap();
        let mut s = OracleSession::open(&f, 1, OracleMode::Erasure, Box::new(SpanEraser::new(1)), 0);
        s.query(0b1011).unwrap();
        assert!(overlay(&s).is_empty());
    }

    #[test]
    fn pair_sum_first() {
        let f = BooleanFunction::zero(8).unwrap();
        let mut s = OracleSession::open(&f, 2, OracleMode::Erasure, Box::new(SpanEraser::new(2)), 0);
        s.query(0b0001).unwrap();
        s.query(0b0110).unwrap();
        assert_eq!(overlay(&s), HashSet::from([0b0111]));
        s.query(0b1000).unwrap();
        // Hand enumeration of the order after x3: (1,3) then (2,3); (1,2) is done.
        assert_eq!(overlay(&s), HashSet::from([0b0111, 0b1001, 0b1110]));
        s.query(0b0111 ^ 0b1000).unwrap();
        assert_eq!(s.query(0b0111).unwrap(), QueryAnswer::Erased);
    }

    fn all_subset_sums(points: &[u64]) -> Vec<u64> {
        (2..=points.len())
            .flat_map(|size| points.iter().copied().combinations(size))
            .map(|c| c.iter().fold(0, |a, b| a ^ b))
            .collect()
    }

    // With at most floor(log2 t) answered queries, every sum of two or more
    // answered points is spoiled before the next query.
    #[test]
    fn spans_are_erased_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let f = BooleanFunction::zero(12).unwrap();
        for t in [4usize, 8, 16] {
            let max_queries = t.ilog2() as usize;
            for trial in 0..300 {
                let mut s = OracleSession::open(&f, t, OracleMode::Erasure, Box::new(SpanEraser::new(t)), trial);
                let mut answered = Vec::new();
                for _ in 0..max_queries {
                    let x = rng.gen_range(0..1u64 << 12);
                    if !s.query(x).unwrap().is_erased() && !answered.contains(&x) {
                        answered.push(x);
                    }
                    let spoiled = overlay(&s);
                    for sum in all_subset_sums(&answered) {
                        assert!(spoiled.contains(&sum), "t={t} trial={trial}");
                    }
                }
            }
        }
    }

    #[test]
    fn long_runs_stay_cheap_and_bounded() {
        let f = BooleanFunction::zero(20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = OracleSession::open(&f, 2, OracleMode::Erasure, Box::new(SpanEraser::new(2)), 0);
        for _ in 0..3000 {
            s.query(rng.gen_range(0..1 << 20)).unwrap();
        }
        // Budget 2 per query; rare collisions among sums may cost a few.
        let n = overlay(&s).len();
        assert!(n <= 2 * 3000 && n >= 2 * 3000 - 20, "{n}");
    }

    #[test]
    fn tiny_domain_saturates_without_stalling() {
        let f = BooleanFunction::zero(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = OracleSession::open(&f, 4, OracleMode::Erasure, Box::new(SpanEraser::new(4)), 0);
        for _ in 0..200 {
            s.query(rng.gen_range(0..8)).unwrap();
        }
        assert!(overlay(&s).len() <= 8);
    }
}
