use std::fmt;

use thiserror::Error;

/// A single broken invariant found while validating a graph description.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoEdges,
    DuplicateVertex(i64),
    DuplicateEdge(i64),
    UnknownVertex { vertex: i64, context: String },
    NonpositiveLength { edge: i64, length: f64 },
    FluxDimension { edge: i64, expected: usize, got: usize },
    GeneratorOutOfRange { generator: usize, generators: usize },
    SelfIdentification { vertex: i64 },
    ConflictingIdentification { plus: i64, minus: i64 },
    FluxWithIdentifications { edge: i64 },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoEdges => write!(f, "graph has no edges"),
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Violation::UnknownVertex { vertex, context } => {
                write!(f, "unknown vertex {vertex} referenced by {context}")
            }
            Violation::NonpositiveLength { edge, length } => {
                write!(f, "nonpositive length {length} on edge {edge}")
            }
            Violation::FluxDimension {
                edge,
                expected,
                got,
            } => write!(
                f,
                "flux vector of edge {edge} has {got} entries, expected {expected}"
            ),
            Violation::GeneratorOutOfRange {
                generator,
                generators,
            } => write!(
                f,
                "generator index {generator} outside 1..={generators}"
            ),
            Violation::SelfIdentification { vertex } => {
                write!(f, "identification of vertex {vertex} with itself")
            }
            Violation::ConflictingIdentification { plus, minus } => write!(
                f,
                "identification {plus} ~ {minus} conflicts with earlier identifications"
            ),
            Violation::FluxWithIdentifications { edge } => write!(
                f,
                "edge {edge} carries nonzero flux although identifications are given"
            ),
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}

/// All violations found by a validation pass. Empty iff the input is valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Turns a non-empty report into an error.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),
    #[error("unknown example graph `{0}` (expected lasso, fig1b, fig1c or fig1d)")]
    UnknownExample(String),
    #[error("length slots: expected {expected} lengths, got {got}")]
    LengthCount { expected: usize, got: usize },
    #[error("unbound length slots in example `{0}`")]
    UnboundLengths(String),
    #[error("vertex degree must be at least 1")]
    ZeroDegree,
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("operation requires exactly one generator, graph has {0}")]
    GeneratorCount(usize),
    #[error("interior resonance of the decoration at k = {0}")]
    Resonance(f64),
    #[error("decoration: {0}")]
    Decoration(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed graph file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
