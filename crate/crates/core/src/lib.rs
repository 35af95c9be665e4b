//! Exact combinatorics and linear algebra for Schur algebras of the general
//! linear supergroup, their enhanced (Levi-type) extension and a degenerate
//! Hecke-type algebra acting on enhanced tensor space.
//!
//! Everything here is `no_std` with `alloc`; IO lives in the `levi-schur` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod combinatorics;
pub mod duality;
pub mod enhanced;
mod error;
pub mod field;
pub mod hecke;
pub mod linalg;
pub mod schur;

pub use error::{Error, Result};
