//! Experiment engine: builds inputs, opens sessions, runs testers and
//! aggregates verdicts into reports.
//!
//! Every trial draws its seeds from a ChaCha stream selected by the trial
//! index, so serial and parallel runs see the same randomness.

mod config;
mod report;
pub mod verify;

pub use config::{ExperimentConfig, OutputFormat};
pub use report::{ExperimentReport, ReportRow};

use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversaries;
use crate::error::{Error, Result};
use crate::model::FunctionFile;
use crate::oracle::{OracleMode, OracleSession, SessionStats};
use crate::stats::{wilson, CONFIDENCE};
use crate::testers::{Decision, TesterKind, Verdict};
use crate::witness::{validate, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSeeds {
    pub input: u64,
    pub tester: u64,
    pub adversary: u64,
}

/// Seeds of trial `index`: stream `index` of a ChaCha generator keyed by
/// the master seed.
pub fn trial_seeds(master: u64, index: u64) -> TrialSeeds {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    TrialSeeds { input: rng.next_u64(), tester: rng.next_u64(), adversary: rng.next_u64() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub seeds: TrialSeeds,
    pub verdict: Verdict,
    pub session: SessionStats,
    /// Result of the independent witness check, when a witness was emitted.
    pub witness_valid: Option<bool>,
}

/// A validated configuration plus the input when it does not vary by trial.
pub struct Experiment {
    config: ExperimentConfig,
    fixed: Option<FunctionFile>,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let fixed = if config.input.kind.is_random() { None } else { Some(config.input.generate(config.seed)?) };
        Ok(Self { config, fixed })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    /// The input trial `index` runs on.
    pub fn input(&self, index: u64) -> Result<FunctionFile> {
        match &self.fixed {
            Some(f) => Ok(f.clone()),
            None => self.config.input.generate(trial_seeds(self.config.seed, index).input),
        }
    }

    pub fn run_trial(&self, index: u64) -> Result<TrialOutcome> {
        let seeds = trial_seeds(self.config.seed, index);
        let generated;
        let input = match &self.fixed {
            Some(f) => f,
            None => {
                generated = self.config.input.generate(seeds.input)?;
                &generated
            }
        };
        self.run_on(index, input)
    }

    /// Runs trial `index`'s tester and adversary on an explicit input.
    pub fn run_on(&self, index: u64, input: &FunctionFile) -> Result<TrialOutcome> {
        Ok(self.run_inner(index, input, false)?.0)
    }

    /// Like [`Experiment::run_trial`], also returning the transcript dump.
    pub fn run_trial_with_transcript(&self, index: u64) -> Result<(TrialOutcome, String)> {
        let input = self.input(index)?;
        let (out, dump) = self.run_inner(index, &input, true)?;
        Ok((out, dump.expect("requested")))
    }

    fn run_inner(&self, index: u64, input: &FunctionFile, dump: bool) -> Result<(TrialOutcome, Option<String>)> {
        let cfg = &self.config;
        let seeds = trial_seeds(cfg.seed, index);
        let mut params = cfg.params(seeds.tester);
        if let (None, FunctionFile::Seq(s)) = (params.r, input) {
            params.r = Some(s.distinct());
        }
        let strategy = adversaries::by_name(&cfg.strategy, cfg.t)?;
        let mut session =
            OracleSession::open(input.as_input(), cfg.t, cfg.mode, strategy, seeds.adversary).with_tester(cfg.tester.name());
        let verdict = cfg.tester.run(&mut session, &params)?;
        let witness_valid = verdict.witness.as_ref().map(validate);
        let transcript = dump.then(|| session.inspect().0.dump(session.domain()));
        Ok((TrialOutcome { index, seeds, verdict, session: session.stats(), witness_valid }, transcript))
    }

    pub fn estimate(&self) -> Result<ExperimentReport> {
        self.estimate_with(true)
    }

    pub fn estimate_with(&self, parallel: bool) -> Result<ExperimentReport> {
        let start = Instant::now();
        let n = self.config.trials;
        let outcomes: Vec<TrialOutcome> = if parallel {
            (0..n).into_par_iter().map(|i| self.run_trial(i)).collect::<Result<_>>()?
        } else {
            (0..n).map(|i| self.run_trial(i)).collect::<Result<_>>()?
        };
        Ok(ExperimentReport::from_outcomes(&self.config, &outcomes, start.elapsed().as_secs_f64()))
    }
}

pub fn run_trial(config: &ExperimentConfig, index: u64) -> Result<TrialOutcome> {
    Experiment::new(config.clone())?.run_trial(index)
}

pub fn estimate(config: &ExperimentConfig) -> Result<ExperimentReport> {
    Experiment::new(config.clone())?.estimate()
}

/// Runs one corruption-mode trial and returns its witness, if any. A
/// witness failing the independent validator is an error.
pub fn extract_witness_run(config: &ExperimentConfig, index: u64) -> Result<Option<Witness>> {
    if config.mode != OracleMode::Corruption {
        return Err(Error::InvalidParameter("witness extraction runs against the corruption oracle".into()));
    }
    if !matches!(config.tester, TesterKind::LinearityCorruption | TesterKind::Blr | TesterKind::LinearitySimple | TesterKind::QuadraticityAkklr) {
        log::warn!("witness extraction with `{}`", config.tester.name());
    }
    let out = run_trial(config, index)?;
    match (out.verdict.decision, out.verdict.witness, out.witness_valid) {
        (Decision::Reject, Some(w), Some(true)) => Ok(Some(w)),
        (Decision::Reject, Some(_), _) => Err(Error::InvalidParameter(format!("trial {index} produced an invalid witness"))),
        _ => Ok(None),
    }
}

/// Rejection rate and its Wilson interval at the report confidence.
pub fn rate(rejects: u64, trials: u64) -> (f64, crate::stats::Interval) {
    (rejects as f64 / trials as f64, wilson(rejects, trials, CONFIDENCE))
}
