//! Exact classification of indecomposable module categories over graded
//! pointed fusion categories `Vec_K^ω` and over Tambara–Yamagami categories.
//!
//! Cochains take values in `Z/M`, standing for `M`-th roots of unity in `k*`.
//! A `K`-grading by `G = K/N` gives the `G`-action on module classes of the
//! trivial component `Vec_N^{ω|N}`; [`clifford`] reads off orbits, stabilizers
//! and induction data, and [`extensions`] classifies extensions of the regular
//! module category by pairs `(θ, γ)`.

pub mod cache;
pub mod cli;
pub mod clifford;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod groups;
pub mod pointed;
pub mod ty;
pub mod zmod;

pub use error::{Error, Result};
