//! Exact arithmetic: rationals, integer polynomials in `L`, and rationally
//! graded polynomials.

mod graded;
mod lpoly;
mod rational;

pub use graded::{BiDegree, BiGradedPoly, QGradedPoly};
pub use lpoly::LPoly;
pub use rational::Rational;

/// `lpoly_exact_divide`: quotient of an exact polynomial division.
pub fn lpoly_exact_divide(numerator: &LPoly, divisor: &LPoly) -> crate::Result<LPoly> {
    numerator.exact_divide(divisor)
}

pub fn qgraded_shift(p: &QGradedPoly, delta: &Rational) -> QGradedPoly {
    p.shift(delta)
}

pub fn is_palindromic(p: &QGradedPoly, top: &Rational) -> bool {
    p.is_palindromic(top)
}
