//! Exact Tannaka reconstruction for Lie algebras over ℚ.
//!
//! From structure constants and finite-dimensional modules this crate builds a
//! finite fragment of the representation category and computes on it: the
//! matrix-coefficient algebra on truncated U(g), the Lie algebra of the
//! reconstructed monoid, one-parameter elements, Jordan–Chevalley
//! decompositions, BCH groups of nilpotent algebras, and face structures of
//! weight monoids.

pub mod catalog;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod jordan;
pub mod liealg;
pub mod nilgrp;
pub mod oneparam;
pub mod repn;
pub mod tannaka;
pub mod toric;
pub mod uea;

pub use error::{Error, Result};
