//! Exact construction and verification of Drinfeld twists for finite group
//! algebras: symplectic twists on odd abelian groups, iterated twists along
//! semidirect hierarchies, and twists built from doubles of bijective
//! 1-cocycles.

pub mod coc;
pub mod cyclo;
pub mod dbl;
pub mod error;
pub mod galg;
pub mod grp;
pub mod symp;

pub use error::{Error, Result};
