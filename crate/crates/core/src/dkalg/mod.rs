//! The free Drinfeld–Kohno 2-algebra: generators, elements, relations and the
//! kernel computation for the boundary map.

mod basis;
mod element;
mod gens;
mod kernel;
mod linalg;
mod relations;
mod relator;
mod text;

pub use basis::{bmon_basis, generators, graded_basis, letters, word_basis, Monomial, Part};
pub use element::{CoeffText, Elem, Element};
pub use gens::{aword_normalize, AGen, AWord, BGen, BKind, BMon};
pub use kernel::{
    degree_span, in_relation_span, kernel_of_boundary, kernel_with_quotient, reduce_modulo_relations, BasisOrder,
    DegreeSpan, KernelReport, Quotient, MAX_BASIS, MAX_SPANNING,
};
pub use linalg::{Echelon, Insert, SparseVec};
pub use relations::{five_relations, relation_set, relations_for, six_relations};
pub use relator::{cabling, perm_relator, relator, t, StrandMap};
#[cfg(test)]
pub(crate) use element::tests::arb_element as element_strategy;
