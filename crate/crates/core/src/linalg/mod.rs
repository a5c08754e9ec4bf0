//! Exact rational and integer linear algebra.

mod matrix;
mod normal_form;
mod rational;

pub use matrix::Matrix;
pub use normal_form::{hnf, hnf_integer, is_hnf, is_unimodular, snf, span_basis};
pub use rational::{
    common_denominator, frac, from_bigint, height, int, int_sqrt_exact, is_square,
    parse_rational, rational_sqrt, round, to_f64, ParseRationalError, Rational,
};
