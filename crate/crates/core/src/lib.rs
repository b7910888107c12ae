//! Graphical degree sequences, 2-switch realization spaces, cycle extension
//! and brute-force potential-function thresholds σ(H, n).

pub mod cli;
pub mod degseq;
pub mod error;
pub mod extension;
pub mod graph;
pub mod sigma;
pub mod switchspace;

pub use degseq::DegreeSequence;
pub use error::{Error, Result};
pub use graph::{CycleWitness, Embedding, PatternGraph, SimpleGraph};
pub use switchspace::{SearchBudget, TwoSwitchMove};
