//! Testing algorithms. Each drives one [`OracleSession`] and returns a
//! [`Verdict`].
//!
//! All testers are nonadaptive: the points they query are a function of
//! their own seed and parameters only. Answers decide just when to stop.

mod linearity;
mod quadratic;
mod sequences;

pub use linearity::{
    blr_test, linearity_corruption_test, linearity_online_test, linearity_simple_test, sample_even_subset, LinearityPlan, SIMPLE_C,
};
pub use quadratic::{quadraticity_akklr_test, quadraticity_online_test, akklr_default_reps, QuadraticPlan};
pub use sequences::{scan_lipschitz_test, scan_sortedness_test, sortedness_query_count, sortedness_uniform_test, SORTEDNESS_C};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Domain, QueryAnswer};
use crate::oracle::OracleSession;
use crate::witness::Witness;

/// Default constant in the validity conditions on `t`, a calibration choice.
pub const DEFAULT_C0: f64 = 1.0 / 64.0;
/// Default cap on Algorithm 2 rounds.
pub const DEFAULT_ROUND_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    Accept,
    Reject,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    pub witness: Option<Witness>,
    pub queries_used: usize,
    pub saw_erasure: bool,
    /// Stopped at a cap below the count the guarantee needs.
    pub truncated: bool,
    /// Outer rounds started (Algorithm 1 and 2); iterations otherwise.
    pub rounds: u64,
    /// Internal invariant checks performed (all passed, or we would have
    /// panicked).
    pub checks: u64,
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn rejected(&self) -> bool {
        self.decision == Decision::Reject
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterParams {
    pub epsilon: f64,
    pub t: usize,
    pub seed: u64,
    pub round_cap: Option<u64>,
    pub reps: Option<u64>,
    pub reserve_size_override: Option<usize>,
    /// Number of distinct values of a sequence input.
    pub r: Option<u64>,
    pub c0: f64,
}

impl TesterParams {
    pub fn new(epsilon: f64, t: usize, seed: u64) -> Self {
        Self { epsilon, t, seed, round_cap: None, reps: None, reserve_size_override: None, r: None, c0: DEFAULT_C0 }
    }

    fn check_eps(&self, hi: f64) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < hi) {
            return Err(Error::InvalidParameter(format!("epsilon {} outside (0, {hi})", self.epsilon)));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Session wrapper that records what the tester itself observed.
pub(crate) struct Querier<'s, 'a> {
    session: &'s mut OracleSession<'a>,
    start: usize,
    saw_erasure: bool,
}

impl<'s, 'a> Querier<'s, 'a> {
    pub(crate) fn new(session: &'s mut OracleSession<'a>) -> Self {
        let start = session.query_count();
        Self { session, start, saw_erasure: false }
    }

    pub(crate) fn ask(&mut self, index: u64) -> Result<QueryAnswer> {
        let a = self.session.query(index)?;
        self.saw_erasure |= a.is_erased();
        Ok(a)
    }

    pub(crate) fn domain(&self) -> Domain {
        self.session.domain()
    }

    pub(crate) fn cube_dim(&self) -> Result<u32> {
        match self.session.domain() {
            Domain::Cube { dim } => Ok(dim),
            d => Err(Error::InvalidParameter(format!("tester needs a hypercube input, got {d}"))),
        }
    }

    pub(crate) fn line_len(&self) -> Result<u64> {
        match self.session.domain() {
            Domain::Line { len } => Ok(len),
            d => Err(Error::InvalidParameter(format!("tester needs a sequence input, got {d}"))),
        }
    }

    pub(crate) fn finish(self, decision: Decision, witness: Option<Witness>) -> Verdict {
        Verdict {
            decision,
            witness,
            queries_used: self.session.query_count() - self.start,
            saw_erasure: self.saw_erasure,
            truncated: false,
            rounds: 0,
            checks: 0,
            warnings: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TesterKind {
    Blr,
    LinearityOnline,
    LinearitySimple,
    LinearityCorruption,
    QuadraticityAkklr,
    QuadraticityOnline,
    SortednessUniform,
    ScanSortedness,
    ScanLipschitz,
}

impl TesterKind {
    pub const ALL: &'static [(&'static str, TesterKind)] = &[
        ("blr", TesterKind::Blr),
        ("linearity_online", TesterKind::LinearityOnline),
        ("linearity_simple", TesterKind::LinearitySimple),
        ("linearity_corruption", TesterKind::LinearityCorruption),
        ("quadraticity_akklr", TesterKind::QuadraticityAkklr),
        ("quadraticity_online", TesterKind::QuadraticityOnline),
        ("sortedness_uniform", TesterKind::SortednessUniform),
        ("scan_sortedness", TesterKind::ScanSortedness),
        ("scan_lipschitz", TesterKind::ScanLipschitz),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, k)| *k == self).map(|(n, _)| *n).expect("listed")
    }

    pub fn run(self, session: &mut OracleSession<'_>, params: &TesterParams) -> Result<Verdict> {
        match self {
            TesterKind::Blr => blr_test(session, params),
            TesterKind::LinearityOnline => linearity_online_test(session, params),
            TesterKind::LinearitySimple => linearity_simple_test(session, params),
            TesterKind::LinearityCorruption => linearity_corruption_test(session, params),
            TesterKind::QuadraticityAkklr => quadraticity_akklr_test(session, params),
            TesterKind::QuadraticityOnline => quadraticity_online_test(session, params),
            TesterKind::SortednessUniform => sortedness_uniform_test(session, params),
            TesterKind::ScanSortedness => scan_sortedness_test(session, params),
            TesterKind::ScanLipschitz => scan_lipschitz_test(session, params),
        }
    }
}

impl std::str::FromStr for TesterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, k)| *k)
            .ok_or_else(|| Error::UnknownName { kind: "tester", name: s.to_string() })
    }
}
