//! Exact computational algebra for multidiagonal determinant families,
//! Frobenius powers of ideals and annihilators of local cohomology classes
//! in hypersurface rings.
//!
//! The crate is layered bottom-up:
//!
//! - [`arith`]: prime fields, their extensions, ℚ.
//! - [`unipoly`]: dense univariate polynomials and factorization over 𝔽_p.
//! - [`detfam`]: banded Toeplitz matrices, their determinants and the
//!   recurrent polynomial families they produce.
//! - [`mpoly`]: sparse multivariate polynomials and a Buchberger engine with
//!   the usual ideal operations.
//! - [`scenarios`]: named hypersurface rings and reproducible verification
//!   runs producing JSON reports.

pub mod arith;
pub mod detfam;
pub mod error;
pub mod mpoly;
pub mod scenarios;
mod text;
pub mod unipoly;

pub use error::{Error, ResourceStats, Result};
