//! Exact symbolic computation of Schouten brackets and Poisson structures
//! on ℂP³ and ℍP¹ = S⁴, over the Gaussian rationals.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cp3;
pub mod error;
pub mod fixtures;
pub mod foliation;
pub mod hp1;
pub mod linalg;
pub mod multivector;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::ExactMatrix;
pub use multivector::{Blade, MVec};
pub use poly::{Monomial, Poly, Var};
pub use scalar::Scalar;
pub use tensor::{embed_gl2h, matrix_form_bracket, QuatMatrix2, Tensor, Tensor1, Tensor2, Tensor3};
