//! Exact linear algebra over the rationals and cyclotomic fields.

pub mod cyclotomic;
pub mod dense;
pub mod field;
pub mod poly;
pub mod sparse;

pub use cyclotomic::{cyclotomic_orders, cyclotomic_poly, CyclotomicNumber, CyclotomicSplit};
pub use dense::{fixed_space, Matrix};
pub use field::{q, q_frac, Field, Q};
pub use poly::Poly;
pub use sparse::{SVec, SparseMatrix, Subspace};
