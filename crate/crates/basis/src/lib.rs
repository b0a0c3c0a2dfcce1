//! Spanning sets and bases of the principal subspaces and of the algebras
//! generated by `x̂(z)` and `x(z)`, their degree statistics, the diagram
//! completion map and Rogers-Ramanujan characters.

mod characters;
mod checks;
mod diagram;
mod family;
mod rank;

pub use characters::{character, rr_product_side, rr_sum_side, series_eq};
pub use checks::{
    first_lemma_monomial, lowest_power, lowest_power_check, lowest_power_fit, zeroth_lemma_check,
    zeroth_lemma_monomial, AffineFit, LemmaReport, LowestPower,
};
pub use diagram::{bijection_check, complete_diagram, d_k, deg_qq, BijectionReport, Column, Diagram};
pub use family::{
    enum_family, family, family_ids, registry, BasisFamily, Element, FamilyKind,
};
pub use rank::{family_rank, independence_rank, poly_rank, RankReport};

use qvertex_qva::QvaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("unknown basis family `{0}`")]
    UnknownFamily(String),
    #[error("D_{k} is undefined for a monomial with {len} indices")]
    IndexOutOfRange { k: usize, len: usize },
    #[error("{0} does not belong to a q-deformed family")]
    NotQuantum(String),
    #[error(transparent)]
    Qva(#[from] QvaError),
}
