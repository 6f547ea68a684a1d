//! Decoding of high-order interleaved rank-metric codes by support recovery.
//!
//! The decoder works for any linear rank-metric code given by a parity-check
//! matrix. It echelonizes the syndrome matrix, carries the row operations over
//! to the parity-check matrix, reads the error's rank support off the kernel of
//! the expanded bottom rows, and finishes with erasure decoding. Success is
//! guaranteed when the error's `F_q`-rank `t` is at most `d - 2`, the
//! interleaving order is at least `t`, and the error also has
//! `F_{q^m}`-rank `t`.
//!
//! Modules:
//! - [`finite_field`]: `F_q ⊂ F_{q^m}` arithmetic in a polynomial basis.
//! - [`matrix`]: dense matrices, echelon forms, both ranks, kernels.
//! - [`codes`]: Gabidulin and generic linear codes, interleaved encoding.
//! - [`decoder`]: the rank-metric decoder and its Hamming-metric sibling.
//! - [`simulate`]: seeded Monte-Carlo trials, success bounds, counting.
//! - [`worked_example`]: the embedded `F_{2^5}` example pipeline.

pub mod codes;
pub mod decoder;
pub mod error;
pub mod finite_field;
pub mod matrix;
pub mod simulate;
pub mod worked_example;

pub use error::{Error, Result};
pub use finite_field::{ExtField, FieldEl};
pub use matrix::{Echelon, Matrix};
