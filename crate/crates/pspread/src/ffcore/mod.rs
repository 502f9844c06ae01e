//! Finite-field arithmetic and dense exact linear algebra.

mod base;
mod ext;
mod matf;
mod poly;

pub use base::{factor_prime_power, is_prime, prime_factors, Fq, MAX_FIELD_ORDER};
pub use ext::{ExtElem, FieldCtx};
pub use matf::{algebra_element, MatF, Rref};
pub use poly::Poly;
