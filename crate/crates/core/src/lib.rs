//! Binary quadratic forms, traces of modular functions over CM points and
//! closed geodesics, Kloosterman sums and Fourier coefficients of
//! Maass–Poincaré series.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod kloosterman;
pub mod maass;
pub mod qforms;
pub mod specfun;
pub mod traces;
pub mod sum;

pub use error::{Error, Result};
