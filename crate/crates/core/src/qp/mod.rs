//! Quivers with potential: data model, bilinear forms, cuts, dimers and the
//! JSON exchange format.

mod cut;
mod dimer;
mod iso;
mod json;
mod potential;
mod quiver;

pub use cut::{Cut, Grading};
pub use dimer::{DimerEdgeJson, DimerFile, DimerGraph};
pub use iso::{
    find_qp_isomorphism, find_qp_isomorphism_up_to_signs, find_quiver_isomorphism, QpIsomorphism,
};
pub use json::{
    load_qp, parse_qp_file, qp_to_file, qp_to_json, validate_file, validate_qp, ArrowJson, Issue,
    LoadedQp, QpFile, TermJson, ValidationReport,
};
pub use potential::{path_is_valid, Cycle, Path, PathCombo, Potential};
pub use quiver::{Arrow, DimVector, Quiver};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0:?}")]
    DuplicateArrow(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("arrow {0:?} is a loop")]
    Loop(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("vector has {got} entries, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative dimension {0}")]
    NegativeDimension(i64),
    #[error("arrow set is not a cut")]
    NotACut,
    #[error("not a perfect matching")]
    NotAMatching,
    #[error("inconsistent dimer: {0}")]
    Dimer(String),
    #[error("{0}")]
    Parse(String),
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid QP: {}", .0.iter().map(|i| format!("{}: {}", i.location, i.message)).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
}

/// A quiver together with a potential whose cycles are valid in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
}

impl Qp {
    pub fn new(quiver: Quiver, potential: Potential) -> Result<Self, QpError> {
        potential.validate(&quiver)?;
        Ok(Qp { quiver, potential })
    }

    /// Resolves a vertex id.
    pub fn vertex(&self, id: &str) -> Result<usize, QpError> {
        self.quiver
            .vertex_index(id)
            .ok_or_else(|| QpError::UnknownVertex(id.to_string()))
    }
}
