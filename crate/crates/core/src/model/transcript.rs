use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::function::Domain;

/// What the oracle returns for a single query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QueryAnswer {
    Value(u64),
    /// The erased symbol.
    Erased,
}

impl QueryAnswer {
    pub fn value(self) -> Option<u64> {
        match self {
            QueryAnswer::Value(v) => Some(v),
            QueryAnswer::Erased => None,
        }
    }

    pub fn is_erased(self) -> bool {
        self == QueryAnswer::Erased
    }
}

impl fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAnswer::Value(v) => write!(f, "{v}"),
            QueryAnswer::Erased => f.write_str("BOT"),
        }
    }
}

impl FromStr for QueryAnswer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "BOT" => Ok(QueryAnswer::Erased),
            _ => s
                .parse::<u64>()
                .map(QueryAnswer::Value)
                .map_err(|e| Error::Parse { line: 0, msg: format!("bad answer `{s}`: {e}") }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub index: u64,
    pub answer: QueryAnswer,
}

/// Queries in issuance order together with the answers they received.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, index: u64, answer: QueryAnswer) {
        self.entries.push(TranscriptEntry { index, answer });
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn query_count(&self) -> usize {
        self.entries.len()
    }

    pub fn last(&self) -> Option<&TranscriptEntry> {
        self.entries.last()
    }

    /// One line per query: `<index-or-bits-hex> <value|BOT>`. Cube points
    /// are written as `0x`-prefixed hex, line positions in decimal.
    pub fn dump(&self, domain: Domain) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match domain {
                Domain::Cube { .. } => out.push_str(&format!("{:#x} {}\n", e.index, e.answer)),
                Domain::Line { .. } => out.push_str(&format!("{} {}\n", e.index, e.answer)),
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut t = Transcript::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: n + 1, msg };
            let (idx, ans) = line.split_once(' ').ok_or_else(|| err(format!("expected two fields in `{line}`")))?;
            let index = match idx.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => idx.parse(),
            }
            .map_err(|e| err(format!("bad index `{idx}`: {e}")))?;
            let answer = ans.trim().parse::<QueryAnswer>().map_err(|e| err(e.to_string()))?;
            t.push(index, answer);
        }
        Ok(t)
    }
}
