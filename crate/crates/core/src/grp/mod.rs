//! Finite groups: abelian presentations, dense tables, semidirect products
//! and actions by automorphisms.

mod abelian;
mod action;
mod finite;
mod subgroup;

pub use abelian::AbelianGroup;
pub use action::{dual_invariance_holds, AbelianHom, GroupAction};
pub use finite::{FiniteGroup, SemidirectParts, Structure};
pub(crate) use finite::same_group;
pub use subgroup::{derived_series, derived_subgroup, generated_subgroup, generating_sequence, is_solvable};
