//! Exact-arithmetic engine for Lie algebra homology of nested parabolic
//! subalgebras q ⊂ p ⊂ g in a complex semisimple Lie algebra.
//!
//! Everything is computed over the rationals: root systems and the Killing
//! form, Weyl group combinatorics (Hasse diagrams, affine orbits), the
//! weight-level homology of `q₊/p₊` with coefficients in an irreducible
//! p-representation, and explicit Chevalley-basis chain complexes that verify
//! the structural identities (Hodge decomposition, Laplacian scalars,
//! double-complex relations) by exact rank arithmetic.
//!
//! Weight convention: irreducible representations are labelled by the
//! *negatives of their lowest weights* throughout, and weights are written in
//! fundamental-weight coordinates ("coefficient over the Dynkin node").

pub mod chevalley;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod parabolic;
pub mod rootsys;
pub mod weyl;

pub use homology::{BigradedTable, HomologyEntry};
pub use parabolic::{ParabolicPair, RootPartition};
pub use rootsys::{CartanSpec, Root, RootSystem, Weight};
pub use weyl::WeylElement;

use num::BigRational;

/// Exact scalar type used everywhere.
pub type Q = BigRational;

/// Shorthand for building a `Q` from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Shorthand for building a `Q` ratio.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("cannot parse algebra spec '{0}'")]
    BadAlgebraSpec(String),
    #[error("orbit size cap of {cap} exceeded")]
    OrbitCapExceeded { cap: usize },
    #[error("invalid parabolic pair: {0}")]
    InvalidParabolic(String),
    #[error("weight {0} is not {1}-dominant integral")]
    NotDominant(String, String),
    #[error("element is not in the Hasse diagram: {0}")]
    NotInHasse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("instance too large: chain space of dimension {0} exceeds cap {1}")]
    TooLarge(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
