//! Generalized Reed-Solomon codes: encoding, dual codewords and an
//! erasure-decoding oracle.

mod code;
mod fpoly;

pub use code::{dual_coeffs, CodeSpec, Codeword, RSCode};
pub use fpoly::FPoly;
