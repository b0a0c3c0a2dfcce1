//! Exact scalars for the level-1 vertex operator computations.
//!
//! Every coefficient lives in `F = Q(v)` with `v = q^(1/2)`, so `q = v^2` and
//! the deformation parameter `qq = q^2 = v^4`.

mod factored;
mod field;
mod parse;
mod poly;
mod qnum;

pub use factored::Factored;
pub use field::FieldElem;
pub use poly::Poly;
pub use qnum::{qq_binom, qq_factorial, qq_int, qq_int_half, sym_q_int};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

/// A vector space over `F`.
///
/// Implemented by `FieldElem` itself and by every coefficient module used in
/// series (Fock vectors, jets).
pub trait Module: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn scale(&self, s: &FieldElem) -> Self;

    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.scale(&FieldElem::from_int(-1)));
    }
}

/// A commutative ring containing `F`, used as the coefficient ring of the
/// operator evaluation engine.
pub trait Ring: Module {
    fn one() -> Self;
    fn from_field(f: &FieldElem) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Inverse of a unit; `None` if the element is not invertible.
    fn inverse(&self) -> Option<Self>;
    /// `self^(e/2)` for a unit of the form `c * (1 + nilpotent)` or a
    /// monomial; `None` when no such root exists in the ring.
    fn pow_half(&self, e2: i64) -> Option<Self>;

    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Some(acc)
    }
}
