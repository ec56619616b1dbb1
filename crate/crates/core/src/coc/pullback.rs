use std::sync::Arc;

use super::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::galg::{invert2, is_twist, Invertible2, Tensor2, TwistReport};
use crate::grp::same_group;

/// Whether the pulled-back tensor is known to be invertible.
#[derive(Clone, Debug)]
pub enum Invertibility {
    Verified(Invertible2),
    Singular,
    /// Past the generic inversion limit and no closed form was supplied.
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub tensor: Tensor2,
    pub report: TwistReport,
    pub invertibility: Invertibility,
}

impl Pullback {
    pub fn is_twist(&self) -> bool {
        self.report.holds() && matches!(self.invertibility, Invertibility::Verified(_))
    }

    pub fn invertible(&self) -> Option<&Invertible2> {
        match &self.invertibility {
            Invertibility::Verified(j) => Some(j),
            _ => None,
        }
    }
}

/// First `g` with `(rho(g) ⊗ rho(g))(J) != J`.
pub fn invariance_failure(c: &Cocycle, j: &Tensor2) -> Option<usize> {
    let rho = c.action();
    (0..c.group().order()).find(|&g| {
        let moved = j.push_forward(Arc::clone(j.group()), &rho.automorphism(g).iter().map(|&x| x as usize).collect::<Vec<_>>());
        moved != *j
    })
}

/// `(pi^{-1} ⊗ pi^{-1})(J)` for a `G`-invariant twist `J` on `C[A]`.
///
/// The twist equation is checked on the result. Invertibility is settled by
/// `closed_inverse` when given, else by the generic inverse when the size
/// allows.
pub fn pullback_twist(c: &Cocycle, j: &Tensor2, closed_inverse: Option<&Tensor2>) -> Result<Pullback> {
    if !same_group(j.group(), c.coefficients()) {
        return Err(Error::GroupMismatch);
    }
    if let Some(g) = invariance_failure(c, j) {
        return Err(Error::NotInvariant(g));
    }
    let tensor = j.push_forward(Arc::clone(c.group()), c.inverse_table());
    let report = is_twist(&tensor);
    let invertibility = match closed_inverse {
        Some(inv) => Invertibility::Verified(Invertible2::new(tensor.clone(), inv.clone())?),
        None => match invert2(&tensor) {
            Ok(inv) => Invertibility::Verified(Invertible2::new(tensor.clone(), inv)?),
            Err(Error::Singular) => Invertibility::Singular,
            Err(Error::InversionLimit(_)) => Invertibility::Undetermined,
            Err(e) => return Err(e),
        },
    };
    Ok(Pullback { tensor, report, invertibility })
}
