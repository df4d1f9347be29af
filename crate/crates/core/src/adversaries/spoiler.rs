use std::collections::HashSet;

use rand::RngCore;

use crate::adversaries::{QueriedPoints, Strategy};
use crate::model::Domain;
use crate::oracle::{AdversaryAction, AdversaryView, OracleMode, Replacement};

/// Number of most recent distinct queries whose sums are considered.
const WINDOW: usize = 8;

/// Spoils XOR sums of pairs and triples of the most recent distinct queries,
/// newest first, up to `t` per query.
#[derive(Clone, Debug)]
pub struct SumSpoiler {
    t: usize,
    max_arity: usize,
    explicit_flip: bool,
    queried: QueriedPoints,
}

impl SumSpoiler {
    pub fn new(t: usize) -> Self {
        Self { t, max_arity: 3, explicit_flip: false, queried: QueriedPoints::default() }
    }

    /// Pairs only, writing the complement of the true value.
    pub fn pair_corruptor(t: usize) -> Self {
        Self { t, max_arity: 2, explicit_flip: true, queried: QueriedPoints::default() }
    }

    fn candidates(&self) -> Vec<u64> {
        let pts = self.queried.points();
        let recent: Vec<u64> = pts.iter().rev().take(WINDOW).copied().collect();
        let mut out = Vec::new();
        for a in 0..recent.len() {
            for b in a + 1..recent.len() {
                out.push(recent[a] ^ recent[b]);
            }
            if self.max_arity >= 3 {
                for b in a + 1..recent.len() {
                    for c in b + 1..recent.len() {
                        out.push(recent[a] ^ recent[b] ^ recent[c]);
                    }
                }
            }
        }
        out
    }
}

impl Strategy for SumSpoiler {
    fn name(&self) -> String {
        if self.explicit_flip {
            format!("pair_corruptor(t={})", self.t)
        } else {
            format!("sum_spoiler(t={})", self.t)
        }
    }

    fn act(&mut self, view: &AdversaryView<'_>, _: &mut dyn RngCore) -> AdversaryAction {
        if !matches!(view.domain(), Domain::Cube { .. }) {
            return AdversaryAction::none();
        }
        self.queried.sync(view);
        let want = self.t.min(view.budget);
        let mut seen = HashSet::new();
        let targets = self
            .candidates()
            .into_iter()
            .filter(|p| !view.overlay.contains(*p) && seen.insert(*p))
            .take(want)
            .map(|p| {
                let r = if self.explicit_flip && view.mode == OracleMode::Corruption {
                    Replacement::Value(1 - view.input.value(p).min(1))
                } else {
                    Replacement::Spoil
                };
                (p, r)
            })
            .collect();
        AdversaryAction { targets }
    }
}
