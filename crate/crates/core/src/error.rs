use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::ClassificationResult;

/// Why a generated subgroup was found to have infinite index in the crystallographic group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfiniteIndexReason {
    /// All generating rotations are parallel to a single coordinate axis.
    SingleDirection,
    /// The translation subgroup has rank below three.
    LatticeRank(usize),
}

impl fmt::Display for InfiniteIndexReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteIndexReason::SingleDirection => write!(f, "single direction"),
            InfiniteIndexReason::LatticeRank(r) => write!(f, "translation lattice has rank {r}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("identity element has no axis")]
    IdentityElement,
    #[error("isometry is not axis-parallel (linear part is not diagonal)")]
    NotDiagonal,
    #[error("malformed isometry: {0}")]
    MalformedIsometry(String),
    #[error("bad word: {0}")]
    BadWord(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("element is not in the crystallographic group")]
    NotInUhat,
    #[error("operation requires the {expected} family")]
    FamilyMismatch { expected: &'static str },
    #[error("generator {index} is not a 180 degree rotation")]
    NotARotation { index: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error("infinite index: {0}")]
    InfiniteIndex(InfiniteIndexReason),
    #[error("verification inconclusive: {reason}")]
    VerificationInconclusive {
        reason: String,
        partial: Option<Box<ClassificationResult>>,
    },
    #[error("no axis of the required family meets the plane")]
    EmptyPlane,
    #[error("degenerate rotation axis")]
    DegenerateAxis,
    #[error("tessellation depth {0} exceeds the supported maximum of {max}", max = crate::hyperbolic::MAX_DEPTH)]
    DepthTooLarge(usize),
    #[error("no choice of rotation senses satisfies the relators")]
    NoConsistentSenses,
    #[error("non-integral Eisenstein coordinate for point {0:?}")]
    NonIntegralLabel([i64; 3]),
}

pub type Result<T> = std::result::Result<T, Error>;
