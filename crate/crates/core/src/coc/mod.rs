//! Bijective 1-cocycles, hierarchies and the twists pulled back along them.

mod cocycle;
mod hierarchy;
mod pullback;
mod search;

pub use cocycle::{ess_counterexample, invert_convention, verify_cocycle, Cocycle, CocycleReport};
pub use hierarchy::Hierarchy;
pub use pullback::{invariance_failure, pullback_twist, Invertibility, Pullback};
pub use search::{search_cocycles, SEARCH_LIMIT};
