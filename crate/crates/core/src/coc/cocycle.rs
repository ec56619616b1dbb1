use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{FiniteGroup, GroupAction};

/// Result of checking `pi(g g') = pi(g) (g . pi(g'))` and bijectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    /// First pair `(g, g')`, in index order, where the equation fails.
    pub counterexample: Option<(usize, usize)>,
    pub bijective: bool,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none() && self.bijective
    }
}

/// Exhaustive check over all `|G|^2` pairs.
pub fn verify_cocycle(rho: &GroupAction, pi: &[usize]) -> CocycleReport {
    let (g, a) = (rho.source(), rho.target());
    let mut counterexample = None;
    if pi.len() != g.order() || pi.iter().any(|&x| x >= a.order()) {
        return CocycleReport { counterexample: Some((0, 0)), bijective: false };
    }
    'outer: for x in 0..g.order() {
        for y in 0..g.order() {
            if pi[g.mul(x, y)] != a.mul(pi[x], rho.apply(x, pi[y])) {
                counterexample = Some((x, y));
                break 'outer;
            }
        }
    }
    let mut seen = vec![false; a.order()];
    let bijective = g.order() == a.order() && pi.iter().all(|&v| !std::mem::replace(&mut seen[v], true));
    CocycleReport { counterexample, bijective }
}

/// A verified bijective 1-cocycle `pi: G -> A` for an action `rho` of `G` on `A`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    rho: GroupAction,
    pi: Vec<usize>,
    pi_inv: Vec<usize>,
}

impl Cocycle {
    pub fn new(rho: GroupAction, pi: Vec<usize>) -> Result<Self> {
        let rep = verify_cocycle(&rho, &pi);
        if let Some((x, y)) = rep.counterexample {
            return Err(Error::CocycleEquation(x, y));
        }
        if !rep.bijective {
            return Err(Error::NotBijective);
        }
        let mut pi_inv = vec![0; pi.len()];
        for (g, &a) in pi.iter().enumerate() {
            pi_inv[a] = g;
        }
        Ok(Cocycle { rho, pi, pi_inv })
    }

    /// `G = A`, trivial action, `pi = id`; needs `A` abelian.
    pub fn identity(a: Arc<FiniteGroup>) -> Result<Self> {
        let rho = GroupAction::trivial(Arc::clone(&a), a);
        let pi = (0..rho.source().order()).collect();
        Self::new(rho, pi)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rho.source()
    }

    pub fn coefficients(&self) -> &Arc<FiniteGroup> {
        self.rho.target()
    }

    pub fn action(&self) -> &GroupAction {
        &self.rho
    }

    pub fn pi(&self, g: usize) -> usize {
        self.pi[g]
    }

    pub fn pi_inv(&self, a: usize) -> usize {
        self.pi_inv[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.pi
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.pi_inv
    }
}

/// `sigma(g) = pi(g^{-1})`, which turns a solution of the cocycle equation
/// into one of `sigma(g g') = sigma(g') (g'^{-1} . sigma(g))` and back.
pub fn invert_convention(g: &FiniteGroup, table: &[usize]) -> Vec<usize> {
    (0..g.order()).map(|x| table[g.inv(x)]).collect()
}

/// First pair where `sigma(g g') = sigma(g') (g'^{-1} . sigma(g))` fails.
pub fn ess_counterexample(rho: &GroupAction, sigma: &[usize]) -> Option<(usize, usize)> {
    let (g, a) = (rho.source(), rho.target());
    for x in 0..g.order() {
        for y in 0..g.order() {
            let rhs = a.mul(sigma[y], rho.apply(g.inv(y), sigma[x]));
            if sigma[g.mul(x, y)] != rhs {
                return Some((x, y));
            }
        }
    }
    None
}
