use std::fmt;
use std::sync::Arc;

use super::invert::Invertible2;
use super::kernel::products_differ;
use super::tensor::{Tensor2, Tensor3};
use crate::error::Result;

/// Outcome of the twist test for one tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    /// First triple key where the two sides of the twist equation differ.
    pub equation_counterexample: Option<[u32; 3]>,
    pub counit_left: bool,
    pub counit_right: bool,
}

impl TwistReport {
    pub fn holds(&self) -> bool {
        self.equation_counterexample.is_none() && self.counit_left && self.counit_right
    }
}

impl fmt::Display for TwistReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.equation_counterexample {
            None => write!(f, "twist equation holds")?,
            Some(k) => write!(f, "twist equation fails at {k:?}")?,
        }
        write!(f, "; counit left {}, right {}", ok(self.counit_left), ok(self.counit_right))
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILS"
    }
}

fn counit_ok(j: &Tensor2) -> (bool, bool) {
    (j.counit_left().is_unit(), j.counit_right().is_unit())
}

/// `(Δ⊗I)(J) J_12 = (I⊗Δ)(J) J_23` and `(ε⊗I)(J) = (I⊗ε)(J) = 1`, by full
/// expansion. Invertibility is a separate question.
pub fn is_twist(j: &Tensor2) -> TwistReport {
    let equation_counterexample = products_differ(&j.coproduct_left(), &j.embed12(), &j.coproduct_right(), &j.embed23());
    let (counit_left, counit_right) = counit_ok(j);
    TwistReport { equation_counterexample, counit_left, counit_right }
}

/// `(Δ^J ⊗ I)(X)` for the twisted coproduct `Δ^J(x) = J^{-1} Δ(x) J`.
pub fn twisted_coproduct_left(j: &Invertible2, x: &Tensor2) -> Result<Tensor3> {
    j.inv().embed12().mul(&x.coproduct_left())?.mul(&j.elem().embed12())
}

/// `(I ⊗ Δ^J)(X)`.
pub fn twisted_coproduct_right(j: &Invertible2, x: &Tensor2) -> Result<Tensor3> {
    j.inv().embed23().mul(&x.coproduct_right())?.mul(&j.elem().embed23())
}

/// `Δ^J(g) = J^{-1} (g⊗g) J`.
pub fn twisted_coproduct(j: &Invertible2, g: usize) -> Result<Tensor2> {
    let gg = Tensor2::basis(Arc::clone(j.elem().group()), j.elem().conductor(), [g as u32; 2]);
    j.inv().mul(&gg)?.mul(j.elem())
}

/// Twist test relative to the twisted coproduct of `base`: whether `jp` is a
/// twist for `C[G]^J`.
pub fn is_twist_over(base: &Invertible2, jp: &Tensor2) -> Result<TwistReport> {
    let left = twisted_coproduct_left(base, jp)?.mul(&jp.embed12())?;
    let right = twisted_coproduct_right(base, jp)?.mul(&jp.embed23())?;
    let (counit_left, counit_right) = counit_ok(jp);
    Ok(TwistReport { equation_counterexample: left.first_difference(&right), counit_left, counit_right })
}

/// `(Δ^J⊗I)Δ^J(g) = (I⊗Δ^J)Δ^J(g)` for every `g`; returns the first failing
/// element.
pub fn coassociativity_failure(j: &Invertible2) -> Result<Option<usize>> {
    for g in 0..j.elem().group().order() {
        let d = twisted_coproduct(j, g)?;
        if twisted_coproduct_left(j, &d)? != twisted_coproduct_right(j, &d)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// `R^J = J_21^{-1} J` (the group algebra carries `R = 1⊗1`).
pub fn twisted_r(j: &Invertible2) -> Result<Tensor2> {
    j.inv().flip().mul(j.elem())
}

/// `R_21 R = 1⊗1`.
pub fn is_triangular(r: &Tensor2) -> bool {
    let unit = Tensor2::unit(Arc::clone(r.group()), r.conductor());
    products_differ(&r.flip(), r, &unit, &unit).is_none()
}

/// Whether `Δ^J` is still cocommutative; returns the first element whose
/// twisted coproduct is not flip-symmetric, if any.
pub fn cocommutativity_failure(j: &Invertible2) -> Result<Option<usize>> {
    for g in 0..j.elem().group().order() {
        let d = twisted_coproduct(j, g)?;
        if d.flip() != d {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_cocommutative(j: &Invertible2) -> Result<bool> {
    Ok(cocommutativity_failure(j)?.is_none())
}
