//! Exact dense matrices and the tensor-space model `(ℂ^d)^{⊗n}`.

mod factor;
mod matrix;
mod model;

pub use factor::{
    factor_matching, factor_matching_via_e1, permutation_word, rep_element, rep_element_in, rep_matching, Factorization,
};
pub use matrix::{DenseMatrix, MatrixRecord};
pub use model::{partial_transpose_second, perm_matrix, pstar_complement, ptranspose_matrix, site_embed, RepConfig};
