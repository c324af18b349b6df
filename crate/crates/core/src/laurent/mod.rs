//! Laurent polynomials, truncated Laurent series, matrices over
//! `k[t, t^-1]` and the automorphisms they define.

mod auto;
mod matrix;
mod parse;
mod poly;
mod series;

pub use auto::Automorphism;
pub use matrix::{det_laurent, gl_inverse, LaurentMatrix};
pub use parse::{parse_laurent, parse_matrix};
pub use poly::LaurentPoly;
pub use series::{invert_series, TruncSeries};
