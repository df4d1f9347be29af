//! Property testing with online adversarial erasures and corruptions.

pub mod adversaries;
pub mod error;
pub mod game;
pub mod generators;
pub mod harness;
pub mod ground_truth;
pub mod model;
pub mod oracle;
pub mod stats;
pub mod testers;
pub mod witness;

pub use error::{Error, Result};
