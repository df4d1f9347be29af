use rand::RngCore;

use crate::adversaries::Strategy;
use crate::model::Domain;
use crate::oracle::{AdversaryAction, AdversaryView};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pairing {
    /// Blocks `{2i-1, 2i}` of a 1-based line.
    Line,
    /// Pairs `{x, x xor e_1}` of the hypercube.
    Cube,
}

/// Keeps at most one value of each block visible: after a fresh query it
/// erases the query's partner. Uses one erasure per query.
#[derive(Clone, Debug)]
pub struct PairEraser {
    pairing: Pairing,
}

impl PairEraser {
    pub fn line() -> Self {
        Self { pairing: Pairing::Line }
    }

    pub fn cube() -> Self {
        Self { pairing: Pairing::Cube }
    }

    fn partner(&self, domain: Domain, x: u64) -> Option<u64> {
        let p = match (self.pairing, domain) {
            (Pairing::Line, Domain::Line { .. }) => {
                if x % 2 == 1 {
                    x + 1
                } else {
                    x - 1
                }
            }
            (Pairing::Cube, Domain::Cube { .. }) => x ^ 1,
            _ => return None,
        };
        domain.contains(p).then_some(p)
    }
}

impl Strategy for PairEraser {
    fn name(&self) -> String {
        match self.pairing {
            Pairing::Line => "pair_eraser".into(),
            Pairing::Cube => "cube_pair_eraser".into(),
        }
    }

    fn act(&mut self, view: &AdversaryView<'_>, _: &mut dyn RngCore) -> AdversaryAction {
        let Some(last) = view.transcript.last() else {
            return AdversaryAction::none();
        };
        if view.budget == 0 || view.overlay.contains(last.index) {
            return AdversaryAction::none();
        }
        match self.partner(view.domain(), last.index) {
            Some(p) if !view.overlay.contains(p) => AdversaryAction::spoil_all([p]),
            _ => AdversaryAction::none(),
        }
    }
}
