//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by register operations, gates, measurements, and parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalized: norm = {norm}")]
    Unnormalized { norm: f64 },

    #[error("site index {site} out of range for a {n_sites}-site register")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("pair operation requires two distinct sites, got {site} twice")]
    SameSite { site: usize },

    #[error("phase function is not unimodular: |phase| = {magnitude}")]
    NonUnimodularPhase { magnitude: f64 },

    #[error("registers have different site structures")]
    StructureMismatch,

    #[error("Fock index {k} out of range for {n} particles")]
    FockIndexOutOfRange { k: usize, n: usize },

    #[error("odd parity ket is empty for zero particles")]
    EmptyParity,

    #[error("particle count must be at least 1 for this operation")]
    NoParticles,

    #[error("post-selected branch has probability {probability:.3e} (below threshold)")]
    ZeroProbabilityBranch { site: usize, probability: f64 },

    #[error("cannot remove a mode-{mode} particle from site {site}: no support left")]
    RemovalExhausted { site: usize, mode: char },

    #[error("operation requires equal particle numbers, got {n1} and {n2}")]
    UnequalParticleNumbers { n1: usize, n2: usize },

    #[error("eigendecomposition failed to reconstruct a unitary (deviation {deviation:.3e})")]
    EigenFailure { deviation: f64 },

    #[error("graph syntax error at line {line}, column {column}: {message}")]
    GraphSyntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported graph format version {version} (expected 1)")]
    GraphVersion { version: u64 },

    #[error("duplicate vertex id \"{id}\"")]
    DuplicateVertex { id: String },

    #[error("edge references unknown vertex id \"{id}\"")]
    UnknownVertex { id: String },

    #[error("self-loop on vertex \"{id}\" is not allowed")]
    SelfLoop { id: String },

    #[error("negative particle number on vertex \"{id}\"")]
    NegativeParticleNumber { id: String },

    #[error("vertex \"{id}\" has an unnormalized initial state (norm = {norm})")]
    UnnormalizedInit { id: String, norm: f64 },
}

impl Error {
    /// Stable machine-readable code for each error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Unnormalized { .. } => "unnormalized-state",
            Error::SiteOutOfRange { .. } => "site-out-of-range",
            Error::SameSite { .. } => "same-site",
            Error::NonUnimodularPhase { .. } => "non-unimodular-phase",
            Error::StructureMismatch => "structure-mismatch",
            Error::FockIndexOutOfRange { .. } => "fock-index-out-of-range",
            Error::EmptyParity => "empty-parity",
            Error::NoParticles => "no-particles",
            Error::ZeroProbabilityBranch { .. } => "zero-probability-branch",
            Error::RemovalExhausted { .. } => "removal-exhausted",
            Error::UnequalParticleNumbers { .. } => "unequal-particle-numbers",
            Error::EigenFailure { .. } => "eigen-failure",
            Error::GraphSyntax { .. } => "graph-syntax",
            Error::GraphVersion { .. } => "graph-version",
            Error::DuplicateVertex { .. } => "duplicate-vertex",
            Error::UnknownVertex { .. } => "unknown-vertex",
            Error::SelfLoop { .. } => "self-loop",
            Error::NegativeParticleNumber { .. } => "negative-particle-number",
            Error::UnnormalizedInit { .. } => "unnormalized-init",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
