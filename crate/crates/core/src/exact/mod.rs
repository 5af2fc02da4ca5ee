//! Exact arithmetic: rationals, Laurent polynomials, reduced rational
//! functions, gcd/CRT and cyclotomic polynomials.

mod cyclotomic;
pub mod factored;
mod laurent;
pub(crate) mod modp;
pub mod rat;
mod ratfn;
pub mod zpoly;

pub use cyclotomic::cyclotomic;
pub use factored::{Fraction, Product};
pub use laurent::{crt_pair, poly_ext_gcd, poly_gcd, LaurentPoly};
pub use rat::BigRat;
pub use ratfn::RatFn;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operand has negative exponents where a polynomial is required")]
    NotPolynomial,
    #[error("gcd of two zero polynomials")]
    ZeroGcd,
    #[error("moduli are not coprime")]
    NotCoprime,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
