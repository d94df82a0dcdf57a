//! Robin eigenvalues of intervals and rectangular boxes.

// `!(x > 0.0)` is how NaN gets rejected alongside the bad values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basisfn;
pub mod boxes;
pub mod cli;
pub mod error;
pub mod figures;
pub mod interval;
pub mod oracle;
pub mod rootfind;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};
