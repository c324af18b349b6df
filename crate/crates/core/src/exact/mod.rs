//! Exact scalar arithmetic and dense linear algebra over `Q` and `F_p`.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{FieldCtx, Scalar};
pub use matrix::Matrix;
pub use subspace::{quotient_dim, QuotientBasis, Subspace};
