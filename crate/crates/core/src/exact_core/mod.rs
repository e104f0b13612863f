//! Exact arithmetic and sparse linear algebra over Q and Q[h]/(h^N).

mod linalg;
mod poly;
mod scalar;
mod series;
mod sparse;

pub use linalg::{kernel_basis, solve, tensor_product_map, Echelon, LinMap, Subspace, TensorShape};
pub use poly::{monomials_up_to, Monomial, Poly};
pub use scalar::Scalar;
pub use series::{series_exp, Coeff, SeriesScalar};
pub use sparse::{format_vector, SparseVec, Vector};
