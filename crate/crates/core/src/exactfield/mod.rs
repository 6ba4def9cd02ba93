//! Exact scalars and linear algebra.
//!
//! All scalar types implement [`Ring`]: rationals, quotient algebras
//! Q[x]/(q), split étale algebras S^f with the cyclic Frobenius shift, and
//! extensions S[x]/(m) over any of those.

mod algebra;
mod etale;
mod ext;
mod jordan;
mod matrix;
pub mod poly;
mod rational;
mod ring;

pub use algebra::{AlgebraElement, QuotientAlgebra};
pub use etale::{fixed_points_shift, shift_apply, Etale, EtaleAlgebra, EtaleParent};
pub use ext::{Ext, ExtAlgebra};
pub use jordan::{block_diagonal, eigenvalue_block_structure, jordan_block, nilpotent_block_structure};
pub use matrix::Matrix;
pub use rational::Rational;
pub use ring::Ring;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("NotAUnit: element is a zero divisor")]
    NotAUnit,
    #[error("NotNilpotent: matrix power M^n is nonzero")]
    NotNilpotent,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("entries from different algebras: {0}")]
    ParentMismatch(String),
    #[error("pivot is a zero divisor; the algebra is not a field")]
    ZeroDivisor,
    #[error("matrix is not invertible")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}
