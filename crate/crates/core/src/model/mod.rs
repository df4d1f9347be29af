//! Shared domain types: hypercube points, input functions, query answers
//! and transcripts.

pub mod function;
pub mod io;
pub mod point;
pub mod transcript;

pub use function::{BooleanFunction, Domain, Input, SequenceFunction, SequenceSource, TernaryFunction};
pub use io::FunctionFile;
pub use point::{xor_sum, Point, MAX_DIM};
pub use transcript::{QueryAnswer, Transcript, TranscriptEntry};
