//! Exact scalars: rationals and Laurent polynomials over them.

mod laurent;
mod rational;

pub use laurent::{laurent_divide_exact, laurent_eval, laurent_mul, Exponent, LaurentPoly};
pub use rational::{int, rat, ParseRationalError, Rational};
