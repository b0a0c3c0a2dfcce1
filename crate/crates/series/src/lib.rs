//! Truncated formal Laurent series with half-integer exponents, the
//! qq-derivation, and normal ordering of the noncommuting variables
//! `z`, `z0`, `z2`.
//!
//! Exponents are stored doubled: the key `k` stands for `z^(k/2)`.

mod calculus;
mod nc;
mod series;

pub use calculus::{
    check_binomial_taylor, check_leibniz, check_nc_binomial, qderive, qderive_n, qtaylor,
};
pub use nc::{nc_binomial, nc_normal_order, NCPoly, NCWord, Var};
pub use series::CoeffSeries;
