//! Numerical laboratory for the two-qutrit entanglement witnesses `W[a,b,c]`.
//!
//! * [`linalg`]: small dense complex kernel (Jacobi eigensolver, Gram rank).
//! * [`witness`]: the witness family, its classification and reductions.
//! * [`optimality`]: zero-expectation product vectors and spanning checks.
//! * [`verify`]: the end-to-end claim checks behind `qutrit-witness verify`.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod linalg;
pub mod optimality;
pub mod verify;
pub mod witness;

pub use linalg::{CMat, CVec, Complex};
pub use witness::{build_witness, classify, Branch, Classification, WitnessParams};
