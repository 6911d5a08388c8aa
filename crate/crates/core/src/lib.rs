//! Product-formula simulation with entanglement-aware error bounds.
//!
//! The crate is `no_std` with `alloc`; the default `std` feature only adds
//! wall-clock timing to error samples.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bounds;
pub mod dense;
pub mod error;
pub mod hamiltonian;
pub mod mps;
pub mod pauli;
pub mod stats;
pub mod trotter;

pub use error::{Error, Result};
pub use num_complex::Complex64;
