//! Augmented directed complexes and the strict ω-categories they generate.
//!
//! An [`AugmentedComplex`] is a graded free abelian group with boundary,
//! augmentation and a distinguished submonoid. When it has a loop-free unital
//! basis, its cells ([`Cell`]) form a strict ω-category `νK` that is freely
//! generated by the atoms of the basis. This crate builds such complexes
//! ([`simplex`], [`globe`], [`tensor`], ...), checks the basis conditions,
//! enumerates and composes cells, and decomposes cells into atoms.

pub mod cell;
pub mod chain;
pub mod complex;
pub mod constructions;
pub mod decompose;
pub mod digraph;
pub mod enumerate;
pub mod hom;
pub mod presentation;

pub use cell::{atom_cell, is_nu_cell, mu_section, validate_cell, Cell, CellError};
pub use chain::{BasisElement, BasisId, ChainError, ChainVector, Sign};
pub use complex::{
    AdcError, Atom, AtomTable, AugmentedComplex, ComplexBuilder, LoopFreeness, MembershipPredicate, StrongLoopFreeness,
    Submonoid, ValidationReport, Violation,
};
pub use constructions::{
    composable_pair, composable_triple, cube, from_dimension_sequence, globe, interchange_quad, simplex, tensor,
    tensor_id, tensor_order_witness, ConstructionError, DimensionSequence,
};
pub use decompose::{
    atom_list_mod, decompose_along, decompose_full, decompose_step, decomposition_index, CompositionTree,
    DecomposeError,
};
pub use enumerate::{count_by_dimension, enumerate_cells, enumerate_cells_bounded};
pub use hom::{
    enumerate_morphisms, hom, hom_complex, hom_prime, HomComplex, HomElement, HomError, HomVariant, Morphism,
};
pub use presentation::{presentation, Presentation, PresentationError, Relation};
