//! Level-1 vertex operators on `L = K(1) ⊗ C{P}`.
//!
//! An operator is a sum of terms `c z^(k/2) W_1(z u_1) ... W_n(z u_n)` where
//! each `W_i` is a word of exponential currents, lattice translations and
//! pairing powers. Evaluation is exact on any finite window.

mod catalog;
mod engine;
mod expr;
mod jet;
mod multi;
mod rules;

pub use catalog::{make_operator, operator_names, registry, OperatorSpec};
pub use engine::{apply_truncated, mode_apply, normal_ordered_apply};
pub use expr::{Atom, Factor, OperatorExpr, Term, Word};
pub use jet::Jet;
pub use multi::{
    lower_bound, normal_ordered_table, product_apply, product_lower_bounds, product_sum_apply, product_sum_band, ratio_power, Shift,
    ShiftPoly, Table,
};
pub use rules::{contraction, CoeffRule, Dir, ExpFactor};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("product is not quasi-commutative: {0}")]
    NotQuasiCommutative(String),
    #[error("pairing power z^({0}/2) cannot be rescaled by v^{1}")]
    OddScale(i64, i64),
}
