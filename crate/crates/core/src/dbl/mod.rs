//! The double of a bijective 1-cocycle and its minimal triangular structure.

mod double;
mod example;

pub use double::{
    build_double, double_check, double_twist, fourier_invariance_failure, fourier_twist, prop41_check, DoubleData,
    DoubleReport, Prop41Report,
};
pub use example::{example43_action, example43_cocycle, example43_hierarchy_twist, example43_table, example_4_3};
