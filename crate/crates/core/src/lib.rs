//! Reduced Burau representations of `B_3` and `B_4` over `Z[t, t⁻¹]` and
//! `Z/p[t, t⁻¹]`, with ping-pong nontriviality certificates, explicit kernel
//! elements and a bounded kernel search.
//!
//! Matrices act on row vectors from the right: `v * β = v ρ(β)`, and the
//! letters of a word act left to right.

pub mod b2;
pub mod braid;
pub mod burau;
pub mod error;
pub mod fuzz;
pub mod kernel;
pub mod laurent;
pub mod pingpong;

pub use braid::{BraidWord, Letter};
pub use burau::{burau_image, BurauMatrix, RowVector};
pub use error::{Error, Result};
pub use laurent::{CoeffRing, Degree, LaurentPoly};
