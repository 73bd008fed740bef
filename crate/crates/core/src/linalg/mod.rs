//! Exact linear algebra over `Q` and `F_p`.

mod matrix;
mod quotient;
mod subspace;

pub use matrix::{apply_tensor, kronecker, Matrix, Rref};
pub use quotient::{
    factor_through, factor_through_kernel, factor_through_mono, induced_quotient_map, quotient,
    QuotientSpace,
};
pub use subspace::{image, kernel, Subspace};
