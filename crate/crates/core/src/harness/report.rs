use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::harness::{rate, ExperimentConfig, OutputFormat, TrialOutcome};
use crate::stats::Interval;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: u64,
    pub accepts: u64,
    pub rejects: u64,
    pub rejection_rate: f64,
    /// Wilson interval at 99%.
    pub ci: Interval,
    pub total_queries: u64,
    pub mean_queries: f64,
    pub max_queries: u64,
    /// Fraction of trials in which the tester received an erased answer.
    pub erasure_rate: f64,
    /// Fraction of trials that read any erased or corrupted value.
    pub adversary_touch_rate: f64,
    pub truncated_trials: u64,
    pub witnesses: u64,
    pub invalid_witnesses: u64,
    pub rejected_actions: u64,
    pub warnings: Vec<String>,
    pub wall_seconds: f64,
}

impl ExperimentReport {
    pub fn from_outcomes(config: &ExperimentConfig, outcomes: &[TrialOutcome], wall_seconds: f64) -> Self {
        let trials = outcomes.len() as u64;
        let rejects = outcomes.iter().filter(|o| o.verdict.rejected()).count() as u64;
        let count = |p: &dyn Fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| p(o)).count() as u64;
        let total_queries: u64 = outcomes.iter().map(|o| o.verdict.queries_used as u64).sum();
        let (rejection_rate, ci) = rate(rejects, trials.max(1));
        let mut warnings: Vec<String> = outcomes.iter().flat_map(|o| o.verdict.warnings.iter().cloned()).collect();
        warnings.sort();
        warnings.dedup();
        let frac = |k: u64| k as f64 / trials.max(1) as f64;
        Self {
            config: config.clone(),
            trials,
            accepts: trials - rejects,
            rejects,
            rejection_rate,
            ci,
            total_queries,
            mean_queries: frac(total_queries),
            max_queries: outcomes.iter().map(|o| o.verdict.queries_used as u64).max().unwrap_or(0),
            erasure_rate: frac(count(&|o| o.verdict.saw_erasure)),
            adversary_touch_rate: frac(count(&|o| o.session.touched_adversary())),
            truncated_trials: count(&|o| o.verdict.truncated),
            witnesses: count(&|o| o.witness_valid.is_some()),
            invalid_witnesses: count(&|o| o.witness_valid == Some(false)),
            rejected_actions: outcomes.iter().map(|o| o.session.rejected_actions).sum(),
            warnings,
            wall_seconds,
        }
    }

    pub fn row(&self) -> ReportRow {
        let c = &self.config;
        ReportRow {
            input: c.input.kind.name().to_string(),
            d: c.input.d,
            n: c.input.n,
            tester: c.tester.name().to_string(),
            epsilon: c.epsilon,
            t: c.t,
            strategy: c.strategy.clone(),
            mode: format!("{:?}", c.mode).to_lowercase(),
            seed: c.seed,
            trials: self.trials,
            accepts: self.accepts,
            rejects: self.rejects,
            rejection_rate: self.rejection_rate,
            ci_lo: self.ci.lo,
            ci_hi: self.ci.hi,
            mean_queries: self.mean_queries,
            max_queries: self.max_queries,
            erasure_rate: self.erasure_rate,
            truncated_trials: self.truncated_trials,
            witnesses: self.witnesses,
            invalid_witnesses: self.invalid_witnesses,
            wall_seconds: self.wall_seconds,
        }
    }

    /// Appends the report to `path`: one CSV row (with a header when the
    /// file is new or empty) or one JSON object per line.
    pub fn append(&self, path: &Path, format: OutputFormat) -> Result<()> {
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        match format {
            OutputFormat::Json => writeln!(file, "{}", serde_json::to_string(self)?)?,
            OutputFormat::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
                w.serialize(self.row()).map_err(|e| std::io::Error::other(e.to_string()))?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Flat summary written to CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub input: String,
    pub d: u32,
    pub n: u64,
    pub tester: String,
    pub epsilon: f64,
    pub t: usize,
    pub strategy: String,
    pub mode: String,
    pub seed: u64,
    pub trials: u64,
    pub accepts: u64,
    pub rejects: u64,
    pub rejection_rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean_queries: f64,
    pub max_queries: u64,
    pub erasure_rate: f64,
    pub truncated_trials: u64,
    pub witnesses: u64,
    pub invalid_witnesses: u64,
    pub wall_seconds: f64,
}
