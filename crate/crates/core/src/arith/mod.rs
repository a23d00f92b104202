//! Exact coefficient domains: prime fields, their finite extensions, and ℚ
//! over arbitrary-precision integers.

mod ext;
mod field;
mod prime;
mod rational;

pub use ext::{build_extension, build_extension_with_budget, ExtField, DEFAULT_ENUMERATION_BUDGET};
pub use field::Field;
pub use prime::{binomial_mod, field_inverse, is_prime, is_square, PrimeField, MAX_MODULUS};
pub use rational::{Integer, Rational, RationalField};
