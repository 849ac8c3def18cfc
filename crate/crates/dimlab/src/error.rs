use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} cap exceeded: requested {requested}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    #[error("mismatched arity: {left} vs {right}")]
    MismatchedArity { left: usize, right: usize },
    #[error("contradictory samples: instance {instance} labeled both 0 and 1")]
    ContradictorySamples { instance: usize },
    #[error("concept is not a member of the class")]
    NotAMember,
    #[error("level set X^{} is empty", if *.side { 1 } else { 0 })]
    EmptyLevelSet { side: bool },
    #[error("concept class must contain at least one concept")]
    EmptyClass,
    #[error("duplicate concept in class construction")]
    DuplicateConcept,
    #[error("invalid instance index {index} for n = {n}")]
    InvalidInstance { index: usize, n: usize },
    #[error("invalid k = {k} for n = {n}")]
    InvalidK { k: usize, n: usize },
    #[error("invalid anchor instance {anchor} for n = {n}")]
    InvalidAnchor { anchor: usize, n: usize },
    #[error("degenerate k = 1: pieces of size 2 admit a single satisfying configuration")]
    DegenerateK,
    #[error("invalid class file: {0}")]
    ClassFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
