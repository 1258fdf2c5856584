//! Exact computation of F-pure thresholds and F-thresholds of binary forms
//! over finite fields.

pub mod arith;
pub mod error;
pub mod fpt;
pub mod fractal;
pub mod gf;
pub mod parse;
pub mod poly;
pub mod syzygy;
pub mod upoly;

pub use error::{Error, Result};
