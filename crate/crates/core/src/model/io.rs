//! Text formats for input functions.
//!
//! ```text
//! bool d=<d>
//! 0110...            (2^d characters '0'/'1' in index order)
//!
//! ter d=<d>
//! 0120...            (2^d characters '0'/'1'/'2')
//!
//! seq n=<n>
//! 3 1 4 1 5 ...      (n whitespace-separated integers)
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::function::{BooleanFunction, Input, SequenceFunction, TernaryFunction};

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionFile {
    Bool(BooleanFunction),
    Ternary(TernaryFunction),
    Seq(SequenceFunction),
}

fn header_param(header: &str, kind: &str, key: &str) -> Result<u64> {
    let rest = header
        .strip_prefix(kind)
        .and_then(|r| r.trim().strip_prefix(key))
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected `{kind} {key}=<int>`, got `{header}`") })?;
    rest.trim().parse().map_err(|e| Error::Parse { line: 1, msg: format!("bad {key}: {e}") })
}

fn digits(body: &str, max: u8) -> Result<Vec<u8>> {
    body.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c.to_digit(10) {
            Some(v) if v <= u32::from(max) => Ok(v as u8),
            _ => Err(Error::Parse { line: 2, msg: format!("unexpected table character `{c}`") }),
        })
        .collect()
}

impl FunctionFile {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim_start();
        let (header, body) = text.split_once('\n').unwrap_or((text, ""));
        let header = header.trim();
        if header.starts_with("bool") {
            let d = header_param(header, "bool", "d")? as u32;
            Ok(FunctionFile::Bool(BooleanFunction::from_values(d, &digits(body, 1)?)?))
        } else if header.starts_with("ter") {
            let d = header_param(header, "ter", "d")? as u32;
            Ok(FunctionFile::Ternary(TernaryFunction::from_values(d, digits(body, 2)?)?))
        } else if header.starts_with("seq") {
            let n = header_param(header, "seq", "n")?;
            let values = body
                .split_whitespace()
                .map(|tok| tok.parse::<u64>().map_err(|e| Error::Parse { line: 2, msg: format!("bad value `{tok}`: {e}") }))
                .collect::<Result<Vec<_>>>()?;
            if values.len() as u64 != n {
                return Err(Error::Parse { line: 2, msg: format!("header says n={n}, found {} values", values.len()) });
            }
            Ok(FunctionFile::Seq(SequenceFunction::from_values(values)?))
        } else {
            Err(Error::Parse { line: 1, msg: format!("unknown header `{header}`") })
        }
    }

    pub fn as_input(&self) -> &dyn Input {
        match self {
            FunctionFile::Bool(f) => f,
            FunctionFile::Ternary(f) => f,
            FunctionFile::Seq(f) => f,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            FunctionFile::Bool(f) => {
                let body: String = f.values().map(|v| if v == 1 { '1' } else { '0' }).collect();
                format!("bool d={}\n{body}\n", f.dim())
            }
            FunctionFile::Ternary(f) => {
                let body: String = f.values().iter().map(|v| char::from(b'0' + v)).collect();
                format!("ter d={}\n{body}\n", f.dim())
            }
            FunctionFile::Seq(s) => {
                let body = s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                format!("seq n={}\n{body}\n", s.len())
            }
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}
