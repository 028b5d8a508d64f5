//! The Puiseux field restricted to rational exponents and Gaussian rational
//! coefficients, with exact linear algebra.

pub mod element;
pub mod gauss;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use element::{mono, t_int, KElement};
pub use gauss::GaussRat;
pub use matrix::{
    cofactor, cramer_solve, deg_dependence_from_kernel, determinant, dot, kernel_vector,
    left_kernel_vector, rank_over_k, rank_over_k_with, KMatrix, MAX_DET,
};
pub use parse::parse_k_element;
pub use poly::PuiseuxPoly;
