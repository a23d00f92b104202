//! Sparse multivariate polynomials over any [`Field`](crate::arith::Field),
//! Gröbner bases and ideal operations.

mod graded;
mod groebner;
mod ideal;
mod monomial;
mod order;
mod poly;
mod ring;
mod text;

pub use graded::{graded_piece_membership, graded_piece_membership_limited, Grading, DEFAULT_ROW_LIMIT};
pub use groebner::{buchberger, is_groebner_basis, GbStats, GroebnerBasis, DEFAULT_STEP_BUDGET};
pub use ideal::{GbCounters, GbTotals, Ideal};
pub use monomial::{Monomial, MAX_VARS};
pub use order::TermOrder;
pub use poly::MultiPoly;
pub use ring::PolyRing;
pub use text::{format_ideal, parse_ideal};
