//! Exact-arithmetic engine for centers of higher degree forms.
//!
//! Computes the center algebra of a nondegenerate homogeneous form (the
//! matrices `X` with `H X = X^T H`, `H` the Hessian), splits it into
//! primitive orthogonal idempotents, and uses the resulting direct sum
//! decomposition to verify or refute composition identities of sums of
//! d-th powers. All arithmetic is exact over arbitrary-precision
//! rationals; there is no floating point anywhere.
//!
//! The crate is `no_std` (it requires `alloc`); IO, parsing and the CLI
//! live in the companion `harrison-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod center;
pub mod decompose;
pub mod factor;
pub mod forms;
pub mod identity;
pub mod matrix;
pub mod poly;
pub mod unipoly;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand used pervasively in tests and constructions.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub use forms::Form;
pub use matrix::Mat;
pub use poly::Polynomial;
