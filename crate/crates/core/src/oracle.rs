//! The online-erasure and online-corruption oracles.
//!
//! A session answers each query from the current overlay (or the hidden
//! input), records it, and only then lets the adversary act on the overlay.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adversaries::Strategy;
use crate::error::{Error, Result};
use crate::model::{Domain, Input, Point, QueryAnswer, Transcript};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleMode {
    Erasure,
    Corruption,
}

impl std::str::FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "erasure" => Ok(OracleMode::Erasure),
            "corruption" => Ok(OracleMode::Corruption),
            _ => Err(Error::UnknownName { kind: "mode", name: s.to_string() }),
        }
    }
}

/// What the adversary wants written at a target point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Replacement {
    /// Erase in erasure mode; write the default wrong value in corruption mode.
    Spoil,
    /// Write this value (corruption mode only; erasure mode erases instead).
    Value(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdversaryAction {
    pub targets: Vec<(u64, Replacement)>,
}

impl AdversaryAction {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn spoil_all(points: impl IntoIterator<Item = u64>) -> Self {
        Self { targets: points.into_iter().map(|p| (p, Replacement::Spoil)).collect() }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }
}

/// Points the adversary has erased or corrupted so far.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overlay {
    map: HashMap<u64, QueryAnswer>,
}

impl Overlay {
    pub fn get(&self, index: u64) -> Option<QueryAnswer> {
        self.map.get(&index).copied()
    }

    pub fn contains(&self, index: u64) -> bool {
        self.map.contains_key(&index)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, QueryAnswer)> + '_ {
        self.map.iter().map(|(k, v)| (*k, *v))
    }
}

/// Everything a strategy may look at when choosing its next action.
pub struct AdversaryView<'a> {
    /// All queries answered so far, including the one just answered.
    pub transcript: &'a Transcript,
    pub input: &'a dyn Input,
    pub overlay: &'a Overlay,
    pub budget: usize,
    pub mode: OracleMode,
    /// Public identity of the tester's code.
    pub tester: &'a str,
}

impl AdversaryView<'_> {
    pub fn domain(&self) -> Domain {
        self.input.domain()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionStats {
    /// Answers that were the erased symbol.
    pub erased_answers: u64,
    /// Answers served from the overlay with a value different from the input.
    pub corrupted_answers: u64,
    /// Adversary actions dropped for exceeding the budget or leaving the domain.
    pub rejected_actions: u64,
}

impl SessionStats {
    /// Whether the tester touched any point the adversary had modified.
    pub fn touched_adversary(&self) -> bool {
        self.erased_answers + self.corrupted_answers > 0
    }
}

/// A stateful `t`-online oracle over a fixed input.
pub struct OracleSession<'a> {
    input: &'a dyn Input,
    budget: usize,
    mode: OracleMode,
    overlay: Overlay,
    transcript: Transcript,
    strategy: Box<dyn Strategy + 'a>,
    rng: ChaCha8Rng,
    tester: String,
    stats: SessionStats,
}

impl<'a> OracleSession<'a> {
    /// Opens a session with an empty overlay. `seed` drives the adversary's
    /// randomness only.
    pub fn open(input: &'a dyn Input, budget: usize, mode: OracleMode, strategy: Box<dyn Strategy + 'a>, seed: u64) -> Self {
        Self {
            input,
            budget,
            mode,
            overlay: Overlay::default(),
            transcript: Transcript::new(),
            strategy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            tester: String::new(),
            stats: SessionStats::default(),
        }
    }

    /// Tags the session with the public tester identity shown to the adversary.
    pub fn with_tester(mut self, tester: impl Into<String>) -> Self {
        self.tester = tester.into();
        self
    }

    pub fn domain(&self) -> Domain {
        self.input.domain()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    pub fn strategy_name(&self) -> String {
        self.strategy.name()
    }

    pub fn query_count(&self) -> usize {
        self.transcript.query_count()
    }

    pub fn stats(&self) -> SessionStats {
        self.stats
    }

    pub fn query(&mut self, index: u64) -> Result<QueryAnswer> {
        let domain = self.input.domain();
        if !domain.contains(index) {
            return Err(Error::OutOfDomain { index, domain: domain.to_string() });
        }
        let truth = self.input.value(index);
        let answer = self.overlay.get(index).unwrap_or(QueryAnswer::Value(truth));
        match answer {
            QueryAnswer::Erased => self.stats.erased_answers += 1,
            QueryAnswer::Value(v) if v != truth => self.stats.corrupted_answers += 1,
            QueryAnswer::Value(_) => {}
        }
        self.transcript.push(index, answer);

        let view = AdversaryView {
            transcript: &self.transcript,
            input: self.input,
            overlay: &self.overlay,
            budget: self.budget,
            mode: self.mode,
            tester: &self.tester,
        };
        let action = self.strategy.act(&view, &mut self.rng);
        self.apply(action);
        Ok(answer)
    }

    pub fn query_point(&mut self, x: Point) -> Result<QueryAnswer> {
        match self.input.domain() {
            Domain::Cube { dim } if dim == x.dim() => self.query(u64::from(x.bits())),
            Domain::Cube { dim } => Err(Error::DimensionMismatch { left: x.dim(), right: dim }),
            d @ Domain::Line { .. } => Err(Error::OutOfDomain { index: u64::from(x.bits()), domain: d.to_string() }),
        }
    }

    fn apply(&mut self, action: AdversaryAction) {
        let domain = self.input.domain();
        if action.len() > self.budget || action.targets.iter().any(|(p, _)| !domain.contains(*p)) {
            log::warn!(
                "dropping action of {} targets from `{}` (budget {})",
                action.len(),
                self.strategy.name(),
                self.budget
            );
            self.stats.rejected_actions += 1;
            return;
        }
        for (point, replacement) in action.targets {
            let written = match self.mode {
                OracleMode::Erasure => QueryAnswer::Erased,
                OracleMode::Corruption => QueryAnswer::Value(match replacement {
                    Replacement::Value(v) => v,
                    Replacement::Spoil => corrupt_value(self.input.value(point), self.input.max_value()),
                }),
            };
            self.overlay.map.insert(point, written);
        }
    }

    /// White-box view for assertions; testers never call this.
    pub fn inspect(&self) -> (&Transcript, &Overlay) {
        (&self.transcript, &self.overlay)
    }
}

/// Default wrong value: the complement for 0/1 ranges, otherwise a neighbour.
pub fn corrupt_value(truth: u64, max: u64) -> u64 {
    if max <= 1 {
        1 - truth.min(1)
    } else if truth < max {
        truth + 1
    } else {
        truth - 1
    }
}
