//! Explicit matrix realizations: Chevalley basis with integer structure
//! constants, rational irreducible representations, and the chain complexes
//! whose differentials, Laplacians, gradings, filtrations, and projections
//! are verified by exact linear algebra.

pub mod absolute;
pub mod basis;
pub mod complex;
pub mod irrep;

pub use absolute::FilteredComplex;
pub use basis::ChevalleyBasis;
pub use complex::{Check, Coefficients, RelativeComplex, Report};
pub use irrep::ExplicitRep;
