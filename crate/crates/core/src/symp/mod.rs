//! Symplectic structures on odd abelian groups, their twists, and
//! hierarchies built from them.

mod hierarchy;
mod lemma;
mod structure;

pub use hierarchy::{
    hierarchy_invertible, hierarchy_twist, theorem31_check, theorem31_r, unipotent_action, HierarchyTwist,
    SymplecticHierarchy, Theorem31Report,
};
pub use lemma::{lemma32_check, lemma32_closed, lemma32_literal};
pub use structure::{SquareReport, SymplecticStructure};
