//! Exact arithmetic: arbitrary-precision rationals and real quadratic
//! extensions `Q(sqrt(D))`.
//!
//! Nothing in this module rounds. Decimal strings are produced only for
//! display, from exact data.

mod quad;
mod rational;

pub use quad::{parse_quad, quad_arith, quad_sign, QuadElem, QuadField, QuadOp};
pub(crate) use rational::common_denominator;
pub use rational::{format_rational, parse_rational, rat, rational_sqrt, Rational};
