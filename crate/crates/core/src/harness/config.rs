use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::adversaries;
use crate::error::{Error, Result};
use crate::generators::{InputKind, InputSpec};
use crate::oracle::OracleMode;
use crate::testers::{TesterKind, TesterParams, DEFAULT_C0};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::UnknownName { kind: "output format", name: s.to_string() }),
        }
    }
}

/// One experiment: an input family, a tester and an adversary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub input: InputSpec,
    pub tester: TesterKind,
    pub epsilon: f64,
    /// Per-query adversary budget.
    pub t: usize,
    pub strategy: String,
    pub mode: OracleMode,
    pub trials: u64,
    pub seed: u64,
    pub round_cap: Option<u64>,
    pub reps: Option<u64>,
    pub r: Option<u64>,
    pub c0: f64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(input: InputSpec, tester: TesterKind, epsilon: f64, t: usize, strategy: &str) -> Self {
        Self {
            input,
            tester,
            epsilon,
            t,
            strategy: strategy.to_string(),
            mode: OracleMode::Erasure,
            trials: 1,
            seed: 0,
            round_cap: None,
            reps: None,
            r: None,
            c0: DEFAULT_C0,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: OracleMode) -> Self {
        self.mode = mode;
        self
    }

    /// Tester parameters for one trial.
    pub fn params(&self, tester_seed: u64) -> TesterParams {
        TesterParams {
            round_cap: self.round_cap,
            reps: self.reps,
            r: self.r,
            c0: self.c0,
            ..TesterParams::new(self.epsilon, self.t, tester_seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        adversaries::by_name(&self.strategy, self.t)?;
        if self.input.kind == InputKind::File && self.input.path.is_none() {
            return Err(Error::InvalidParameter("input=file needs path=<file>".into()));
        }
        Ok(())
    }

    /// Sets one `key=value` entry. Keys mirror the field names; `d`, `n`,
    /// `input_eps` and `path` describe the input, `input` names its kind.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            value.parse().map_err(|e| Error::InvalidParameter(format!("{key}={value}: {e}")))
        }
        match key {
            "input" => self.input.kind = value.parse()?,
            "d" => self.input.d = num(key, value)?,
            "n" => self.input.n = num(key, value)?,
            "input_eps" => self.input.eps = num(key, value)?,
            "path" => self.input.path = Some(PathBuf::from(value)),
            "tester" => self.tester = value.parse()?,
            "epsilon" | "eps" => self.epsilon = num(key, value)?,
            "t" => self.t = num(key, value)?,
            "strategy" => self.strategy = value.to_string(),
            "mode" => self.mode = value.parse()?,
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "round_cap" => self.round_cap = Some(num(key, value)?),
            "reps" => self.reps = Some(num(key, value)?),
            "r" => self.r = Some(num(key, value)?),
            "c0" => self.c0 = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => return Err(Error::UnknownName { kind: "config key", name: key.to_string() }),
        }
        Ok(())
    }

    /// Parses a flat `key = value` file; `#` starts a comment. Values may
    /// be quoted. Unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("expected key = value, got `{line}`") })?;
            let v = v.trim().trim_matches('"');
            cfg.set(k.trim(), v).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        }
        // The input distance target follows epsilon unless given.
        if !text.lines().any(|l| l.trim_start().starts_with("input_eps")) {
            cfg.input.eps = cfg.epsilon;
        }
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::new(InputSpec::cube(InputKind::Linear, 10, 0.25), TesterKind::LinearityOnline, 0.25, 1, "null")
    }
}
