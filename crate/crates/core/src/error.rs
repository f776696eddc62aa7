use std::fmt;

use thiserror::Error;

use crate::graph::Violation;

/// Errors produced by graph constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {}", Violations(.0))]
    InvalidGraph(Vec<Violation>),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("cannot compose: codomain of the first morphism is not the domain of the second")]
    DomainMismatch,
    #[error("morphisms do not share a codomain")]
    CodomainMismatch,
    #[error("morphisms do not have the same domain and codomain")]
    SignatureMismatch,
    #[error("the cycle graph C(0) does not exist")]
    EmptyCycle,
    #[error("graph is not dynamic: node {0} has out-degree {1}")]
    NotDynamic(String, usize),
    #[error("invalid N-set: {0}")]
    InvalidNSet(String),
    #[error("walks live on different graphs")]
    HostMismatch,
    #[error("ill-formed walk: {0}")]
    IllFormedWalk(String),
    #[error("block code domain is not the arc graph A^{level}({graph})")]
    BlockCodeDomain { level: usize, graph: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

struct Violations<'a>(&'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
