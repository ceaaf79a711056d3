use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generating set")]
    EmptyGeneratingSet,

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("not linearly independent")]
    NotLinearlyIndependent,

    #[error("cone is not full-dimensional")]
    NotFullDimensional,

    #[error("semigroup not pointed")]
    NotPointed,

    #[error("semigroup not minimally embedded: elementary divisor {divisor} != 1")]
    NotMinimallyEmbedded { divisor: BigInt },

    #[error("semigroup not saturated: witness {witness} lies in the cone but not in the semigroup")]
    NotSaturated { witness: LatticeVector },

    #[error("not a semigroup element: {0}")]
    NotInSemigroup(LatticeVector),

    #[error("complement infinite: no multiple of ray {ray} lies in supp(I)")]
    ComplementInfinite { ray: LatticeVector },

    #[error("complement exceeds the size limit of {limit} elements")]
    ComplementTooLarge { limit: usize },

    #[error("zero algebra: the ideal contains the unit")]
    ZeroAlgebra,

    #[error("not a liftable homogeneous degree: {alpha} ({reason})")]
    NotLiftable { alpha: LatticeVector, reason: String },

    #[error("not locally nilpotent")]
    NotLocallyNilpotent,

    #[error("every derivation lifts: the semigroup is a first octant")]
    EveryDerivationLifts,

    #[error("a search bound is required for ideals without cofinite support")]
    BoundRequired,

    #[error("torus point has a zero component")]
    ZeroTorusComponent,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}
