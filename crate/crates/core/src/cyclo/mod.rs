//! Exact arithmetic in cyclotomic fields `Q(z_N)`.

mod field;
mod poly;
mod scalar;

pub use field::{cyclotomic_polynomial, totient};
pub use poly::CycPoly;
pub use scalar::CycScalar;

pub(crate) use field::{data, CycloData};

/// `z_N^k`.
pub fn root_of_unity(conductor: u32, k: i64) -> CycScalar {
    CycScalar::root_of_unity(conductor, k)
}
