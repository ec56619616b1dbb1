//! Sparse tensor arithmetic in tensor powers of a group algebra, and the
//! generic checks for twists, triangularity and minimality.

mod export;
mod invert;
mod kernel;
mod rank;
mod tensor;
mod twist;

pub use export::{from_csv, to_csv, ExportMode};
pub use invert::{invert2, Invertible2, GENERIC_INVERSION_LIMIT};
pub use rank::{coefficient_matrix, is_minimal, minimality, rank, MinimalityReport};
pub use tensor::{GroupAlgebraElement, Tensor, Tensor2, Tensor3};
pub use twist::{
    cocommutativity_failure, coassociativity_failure, is_cocommutative, is_triangular, is_twist, is_twist_over,
    twisted_coproduct, twisted_coproduct_left, twisted_coproduct_right, twisted_r, TwistReport,
};
