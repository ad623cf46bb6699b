//! Exact linear algebra over F_p and over the rationals.

mod dense;
mod rational;
mod sparse;

pub use dense::{dense_rank_fp, dense_rank_rows};
pub use rational::{rational_rank, RationalMatrix};
pub use sparse::{sparse_rank_fp, SparseMatrixFp};
