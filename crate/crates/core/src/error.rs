use alloc::string::String;
use alloc::vec::Vec;

/// Library error. Indices are 0-based in the API but rendered 1-based.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("system has no inequalities")]
    EmptySystem,
    #[error("inequality {} has a zero normal", .0 + 1)]
    ZeroNormal(usize),
    #[error("inequalities {} and {} are identical", .0 + 1, .1 + 1)]
    DuplicateInequality(usize, usize),
    #[error("index {} is out of range", .0 + 1)]
    IndexOutOfRange(usize),
    #[error("zero point has no polar")]
    ZeroPoint,
    #[error("origin lies on the border of inequality {}", .0 + 1)]
    OriginOnBoundary(usize),
    #[error("origin lies in the closure of a voting half-plane")]
    OriginInClosure,
    #[error("committee member {} equals the origin", .0 + 1)]
    MemberEqualsOrigin(usize),
    #[error("committee is empty")]
    EmptyCommittee,
    #[error("system is consistent")]
    ConsistentSystem,
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("inequalities {} and {} have no common solution", .0 + 1, .1 + 1)]
    PairwiseInconsistent(usize, usize),
    #[error("all borders are parallel")]
    RankDeficient,
    #[error("borders of inequalities {} and {} are parallel", .0 + 1, .1 + 1)]
    ParallelBorders(usize, usize),
    #[error("a pair needs two distinct inequalities")]
    SameIndex,
    #[error("seed subsystem is inconsistent or its witness fails it")]
    InconsistentSeed,
    #[error("normal list is empty")]
    EmptyInput,
    #[error("system is not in general position: {0}")]
    NotGeneralPosition(String),
    #[error("no committee detected: {} red points still undecided after {rounds} rounds", remaining.len())]
    NoCommitteeDetected { rounds: usize, remaining: Vec<usize> },
    #[error("expected a subsystem of {expected} inequalities, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("borders do not bound a convex polygon: {0}")]
    NotAPolygon(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
