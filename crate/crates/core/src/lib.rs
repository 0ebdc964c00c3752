//! Exact moment measures for the finite continued fractions of a 2-periodic
//! continued fraction.
//!
//! For `a, b > 0` and `w >= 0` the sequence
//! `s_0 = w, s_1 = 1/(a + w), s_2 = 1/(a + 1/(b + w)), ...`
//! is the moment sequence of a discrete signed measure on `[-1, 1]` with
//! atoms at `1` and `±q^k`, where `q` is the smaller root of
//! `x^2 - (2 + ab) x + 1`. This crate builds that measure symbolically over
//! `Q(sqrt(a^2 b^2 + 4ab))`, checks the moment identity exactly, decides when
//! the measure is positive, and probes Hankel positive semidefiniteness of
//! periodic continued fraction sequences.

pub mod cfrac;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod hankel;
pub mod matrix;
pub mod measures;

pub use error::{Error, Result};
pub use exactnum::{QuadElem, QuadField, Rational};
