//! Exact linear algebra over the integers and rationals.
//!
//! Two representations live side by side: dense [`IntMatrix`]/[`RatMatrix`]
//! for small matrices (Smith and Hermite forms, determinants, inverses) and a
//! column-sparse [`SparseMatrix`] whose ranks and kernels come from a
//! fraction-free echelon engine. No floating point is used anywhere.

pub mod dense;
pub mod echelon;
pub mod error;
pub mod hnf;
pub mod int;
pub mod snf;
pub mod sparse;
pub mod subspace;

pub use dense::{IntMatrix, RatMatrix};
pub use echelon::{Echelon, SparseVec};
pub use error::LinalgError;
pub use hnf::{hermite_normal_form, HermiteForm, Lattice};
pub use int::Int;
pub use snf::{smith_normal_form, SmithForm};
pub use sparse::{cohomology_rank, image_rank, SparseMatrix};
pub use subspace::Subspace;

/// Rank over Q of a dense integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    m.rank()
}

/// Columns spanning the rational kernel of `m`.
pub fn kernel_basis(m: &IntMatrix) -> RatMatrix {
    m.kernel_basis()
}
