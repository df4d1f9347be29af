//! Adversary strategies for the online oracles.
//!
//! A strategy is called once after every answered query and returns the
//! points it wants to erase (or corrupt). Strategies may keep state; their
//! only randomness is the session-owned stream passed to [`Strategy::act`].

mod pair;
mod random;
mod span;
mod spoiler;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::oracle::{AdversaryAction, AdversaryView};

pub use pair::PairEraser;
pub use random::RandomEraser;
pub use span::SpanEraser;
pub use spoiler::SumSpoiler;

pub trait Strategy: Send {
    fn name(&self) -> String;

    fn act(&mut self, view: &AdversaryView<'_>, rng: &mut dyn RngCore) -> AdversaryAction;
}

/// Never acts; the session then behaves like the standard query model.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullStrategy;

impl Strategy for NullStrategy {
    fn name(&self) -> String {
        "null".into()
    }

    fn act(&mut self, _: &AdversaryView<'_>, _: &mut dyn RngCore) -> AdversaryAction {
        AdversaryAction::none()
    }
}

pub fn null() -> Box<dyn Strategy> {
    Box::new(NullStrategy)
}

pub fn random_eraser(t: usize) -> Box<dyn Strategy> {
    Box::new(RandomEraser::new(t))
}

pub fn span_eraser(t: usize) -> Box<dyn Strategy> {
    Box::new(SpanEraser::new(t))
}

/// Erases the other half of the block `{2i-1, 2i}` of each queried position.
pub fn pair_eraser() -> Box<dyn Strategy> {
    Box::new(PairEraser::line())
}

/// Erases `x xor e_1` after each query `x`.
pub fn cube_pair_eraser() -> Box<dyn Strategy> {
    Box::new(PairEraser::cube())
}

pub fn sum_spoiler(t: usize) -> Box<dyn Strategy> {
    Box::new(SumSpoiler::new(t))
}

/// Writes flipped values on pairwise sums of recent queries.
pub fn pair_corruptor(t: usize) -> Box<dyn Strategy> {
    Box::new(SumSpoiler::pair_corruptor(t))
}

pub const STRATEGY_NAMES: &[&str] =
    &["null", "random_eraser", "span_eraser", "pair_eraser", "cube_pair_eraser", "sum_spoiler", "pair_corruptor"];

/// Looks a built-in strategy up by its configuration name.
pub fn by_name(name: &str, t: usize) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "null" => null(),
        "random_eraser" => random_eraser(t),
        "span_eraser" => span_eraser(t),
        "pair_eraser" => pair_eraser(),
        "cube_pair_eraser" => cube_pair_eraser(),
        "sum_spoiler" => sum_spoiler(t),
        "pair_corruptor" => pair_corruptor(t),
        _ => return Err(Error::UnknownName { kind: "strategy", name: name.to_string() }),
    })
}

/// Distinct queried points in first-query order, maintained incrementally
/// from the transcript.
#[derive(Clone, Debug, Default)]
pub(crate) struct QueriedPoints {
    seen: std::collections::HashSet<u64>,
    order: Vec<u64>,
    consumed: usize,
}

impl QueriedPoints {
    pub(crate) fn sync(&mut self, view: &AdversaryView<'_>) {
        let entries = view.transcript.entries();
        for e in &entries[self.consumed..] {
            if self.seen.insert(e.index) {
                self.order.push(e.index);
            }
        }
        self.consumed = entries.len();
    }

    pub(crate) fn points(&self) -> &[u64] {
        &self.order
    }
}
