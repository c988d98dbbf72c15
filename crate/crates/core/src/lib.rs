//! Finite model finding and entailment checking for small, finitely
//! axiomatized first-order relational theories, with an embedded corpus of
//! betweenness axiomatizations of the affine line.
//!
//! The crate is `no_std` (it needs `alloc`). IO, threads and report formats
//! live in the `axlab` companion crate.
//!
//! - [`formula`]: syntax, TPTP-style parsing and printing, clausification.
//! - [`corpus`]: the named axioms and axiom systems, sign patterns.
//! - [`model`]: finite structures, evaluation, canonical forms.
//! - [`solver`]: grounding and the CDCL core with assumption cores.
//! - [`finder`]: fixed-size and minimal-size model search.
//! - [`prover`]: entailment and needed-premise analysis.
//! - [`experiments`]: the reproduction suite with embedded expectations.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod corpus;
pub mod experiments;
pub mod finder;
pub mod formula;
pub mod model;
pub mod pool;
pub mod prover;
pub mod solver;

use alloc::string::String;

pub use formula::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("distinctness needs at least two variables, got {0}")]
    TooFewVariables(usize),
    #[error("unknown axiom system `{0}`")]
    UnknownSystem(String),
    #[error("unknown axiom or definition `{0}`")]
    UnknownAxiom(String),
    #[error("sign pattern has {found} marks but the system has {expected} axioms")]
    PatternLength { expected: usize, found: usize },
    #[error("invalid sign pattern `{0}`: use only `+` and `-`")]
    BadPattern(String),
    #[error("invalid triple notation: {0}")]
    Triples(String),
    #[error("symbol `{0}` is not interpreted by the model")]
    Uninterpreted(String),
    #[error("formula is not a sentence (free variable `{0}`)")]
    NotASentence(String),
    #[error("relation `{symbol}` is used with arities {first} and {second}")]
    SignatureMismatch { symbol: String, first: usize, second: usize },
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("witness fails `{0}` under evaluation")]
    InvalidWitness(String),
    #[error("goal is not derivable from the full premise set ({0})")]
    GoalNotDerivable(String),
}
