//! Exact finite-invariant calculus for Schur functors, Sen and de Rham
//! weights, and (φ, N, Gal)-modules.

pub mod cli;
pub mod exactfield;
pub mod json;
pub mod pst;
pub mod schur;
pub mod sen;
pub mod tableaux;
