use thiserror::Error;

use crate::bits::OneBased;
use crate::matroid::{CircuitViolation, HyperplaneViolation, RankViolation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of {0} elements exceeds the 64-element limit")]
    GroundTooLarge(usize),
    #[error("element {element} outside ground set [{n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("circuit axioms violated: {0}")]
    InvalidCircuits(CircuitViolation),
    #[error("hyperplane axioms violated: {0}")]
    InvalidHyperplanes(HyperplaneViolation),
    #[error("rank axioms violated: {0}")]
    InvalidRank(RankViolation),
    #[error("hyperplane family yields rank {computed}, expected {claimed}")]
    RankMismatch { claimed: usize, computed: usize },
    #[error("{} is not a circuit-hyperplane", OneBased(*.0))]
    NotCircuitHyperplane(u64),
    #[error("circuit index {index} out of range ({count} circuits)")]
    CircuitIndexOutOfRange { index: usize, count: usize },
    #[error("overlay has {overlay} elements but the base matroid has {circuits} circuits")]
    OverlaySizeMismatch { overlay: usize, circuits: usize },
    #[error("base matroid has {0} circuits; an overlay on more than 64 circuits is unsupported")]
    TooManyCircuits(usize),
    #[error("circuit set is not a linear class: modular pair {} {} spans circuit {} outside the class", OneBased(*.c1), OneBased(*.c2), OneBased(*.outside))]
    NotLinearClass { c1: u64, c2: u64, outside: u64 },
    #[error("overlay fails the modular-pair condition: {} not in cl_N({{{}, {}}})", OneBased(*.circuit), OneBased(*.c1), OneBased(*.c2))]
    StarPrimeFails { c1: u64, c2: u64, circuit: u64 },
    #[error("{0} is not prime or exceeds 251")]
    NotPrime(u32),
    #[error("matrix dimension error: {0}")]
    Dimension(String),
    #[error("columns {} are dependent", OneBased(*.0))]
    DependentColumns(u64),
    #[error("{} is not a circuit of the column matroid", OneBased(*.0))]
    NotAColumnCircuit(u64),
    #[error("K({r},{t}) requires r >= 4, t >= 3 and r <= 2t-2")]
    KrtOutOfRange { r: usize, t: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("no nontrivial partition")]
    NoNontrivialPartition,
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("edge set is not a cycle")]
    NotACycle,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}
