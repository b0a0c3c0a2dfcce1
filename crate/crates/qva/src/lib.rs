//! The nonlocal q-vertex algebra generated by `x(z)` and its classical
//! counterpart generated by `x̂(z)`.
//!
//! Monomials `x(z)_(l_m) ... x(z)_(l_1) T` are evaluated on Fock vectors,
//! rewritten into basis form, and a catalog of relations is checked on
//! truncated windows. All exponent windows are doubled.

mod assoc;
mod monomial;
mod products;
mod relations;
mod rewrite;

pub use assoc::{last_identity_check, side_coefficient, verify_associativity, AssocSide};
pub use monomial::{Flavor, LinComb, QVAMonomial, Tail};
pub use products::{
    build_expr, eval_monomial, rth_product, rth_product_classical, ymap, ymap_classical,
    Evaluator,
};
pub use relations::{
    associativity_suite, default_probes, relation_ids, relations, verify_relation, Relation, Report,
};
pub use rewrite::{
    evaluation_agrees, index_lists, proportionality_constant, reduce_noncommutative, rewrite,
    straighten_commutative, straightening_soundness,
};

use qvertex_vertexops::VertexError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QvaError {
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error("tail {tail} cannot follow flavor {flavor}")]
    TailMismatch { flavor: String, tail: String },
    #[error("cannot parse monomial `{0}`: {1}")]
    Parse(String, String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("{0} and {1} are not proportional")]
    NotProportional(String, String),
    #[error("expected a monomial of flavor {0}")]
    WrongFlavor(String),
}
