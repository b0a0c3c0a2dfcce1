//! The level-1 state space `L = K(1) ⊗ C{P}`.
//!
//! A basis vector is a monomial `a(-r_1)...a(-r_k) ⊗ e^(j λ1)`; the label `j`
//! is even on `L0` and odd on `L1`, so `e^α` has `j = 2`.

mod exp;
mod vector;

pub use exp::{annihilate, create, creation_monomials, partitions};
pub use vector::{FockKey, FockVec, FockVector};

use qvertex_scalar::{sym_q_int, FieldElem};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("a(0) is not part of the Heisenberg algebra")]
    ZeroMode,
}

/// `[a(r), a(-r)] = [2r][r]/r` at level one, symmetric q-integers.
pub fn heisenberg_scalar(r: u32) -> FieldElem {
    let r = r as i64;
    &(&sym_q_int(2 * r) * &sym_q_int(r)) * &FieldElem::ratio(1, r)
}

/// Doubled pairing `2 (β, γ) = β.j γ.j` under `(λ1, λ1) = 1/2`.
pub fn pairing_exponent(beta: i64, gamma: i64) -> i64 {
    beta * gamma
}

/// Sign picked up when `e^(a λ1)` acts on the label `b`.
///
/// Even translations carry `(-1)^((a/2) b)`, odd ones act trivially; with
/// this choice `e^α` and `e^λ1` anticommute while `e^α` commutes with itself.
pub fn cocycle(a: i64, b: i64) -> i64 {
    if a % 2 == 0 && ((a / 2) * b).rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// The vacuum `1 ⊗ e^(j λ1)`.
pub fn vacuum(j: i64) -> FockVector {
    FockVector::basis(FockKey::new(vec![], j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairings() {
        assert_eq!(pairing_exponent(2, 2), 4);
        assert_eq!(pairing_exponent(1, 1), 1);
        assert_eq!(pairing_exponent(2, 1), 2);
    }

    #[test]
    fn cocycle_anticommutes_alpha_and_lambda() {
        for b in -3..=3 {
            let ab = cocycle(1, b) * cocycle(2, b + 1);
            let ba = cocycle(2, b) * cocycle(1, b + 2);
            assert_eq!(ab, -ba);
            assert_eq!(cocycle(2, b) * cocycle(2, b + 2), cocycle(2, b) * cocycle(2, b + 2));
        }
    }

    #[test]
    fn heisenberg_scalar_at_one() {
        assert_eq!(heisenberg_scalar(1), FieldElem::q() + FieldElem::q().pow(-1));
    }
}
