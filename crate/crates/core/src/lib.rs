//! Exact computation of homogeneous locally nilpotent derivations and
//! automorphism-group generators of monomial algebras `K[S]/I`, with a
//! brute-force derivation oracle for cross-checking.

pub mod cone;
pub mod derivations;
pub mod error;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod quotient;
pub mod semigroup;

pub use error::{Error, Result};
pub use lattice::{DualVector, IntMatrix, LatticeVector, RationalDualVector};
pub use linalg::RationalMatrix;
pub use semigroup::AffineSemigroup;
pub use ideal::{ComplementBasis, MonomialIdeal};
