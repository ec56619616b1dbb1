use std::sync::Arc;

use super::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::grp::{same_group, FiniteGroup, GroupAction};

/// Iterated semidirect products `G_1 = H_1`, `G_i = G_{i-1} ⋉ H_i`.
///
/// An element `x_n ... x_1` of `G = G_n` has index
/// `x_n |G_{n-1}| + index(x_{n-1} ... x_1)`, so the prefix `x_{i} ... x_1` of
/// an index `g` is simply `g mod |G_i|`.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    factors: Vec<Arc<FiniteGroup>>,
    /// `actions[i - 2]` is `rho_{i-1}: G_{i-1} -> Aut(H_i)`.
    actions: Vec<GroupAction>,
    groups: Vec<Arc<FiniteGroup>>,
    product: Arc<FiniteGroup>,
}

impl Hierarchy {
    /// `rest[k]` holds `H_{k+2}` and an action of `G_{k+1}` on it. Actions may
    /// be declared over any group with the same table as `G_{k+1}`.
    pub fn new(first: Arc<FiniteGroup>, rest: Vec<(Arc<FiniteGroup>, GroupAction)>) -> Result<Self> {
        let mut groups = vec![Arc::clone(&first)];
        let mut factors = vec![Arc::clone(&first)];
        let mut actions = Vec::new();
        let mut product = Arc::clone(&first);
        for (h, act) in rest {
            let prev = Arc::clone(groups.last().unwrap());
            if !same_group(act.source(), &prev) {
                return Err(Error::InvalidAction(format!("level {} action is not defined on G_{}", factors.len() + 1, factors.len())));
            }
            if !same_group(act.target(), &h) {
                return Err(Error::InvalidAction(format!("level {} action does not act on H_{}", factors.len() + 1, factors.len() + 1)));
            }
            let ident: Vec<usize> = (0..prev.order()).collect();
            let act = act.pull_back(Arc::clone(&prev), &ident)?;
            let next = FiniteGroup::semidirect(Arc::clone(&prev), Arc::clone(&h), act.clone())?;
            groups.push(Arc::new(next));
            product = Arc::new(FiniteGroup::direct_product(&product, &h));
            factors.push(h);
            actions.push(act);
        }
        Ok(Hierarchy { factors, actions, groups, product })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `H_i`, 1-based.
    pub fn factor(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.factors[i - 1]
    }

    /// `G_i`, 1-based.
    pub fn level_group(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.groups[i - 1]
    }

    /// `rho_{i-1}`, for `i >= 2`.
    pub fn action(&self, i: usize) -> &GroupAction {
        &self.actions[i - 2]
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.groups.last().unwrap()
    }

    /// `A = H_1 x ... x H_n`, first factor most significant.
    pub fn product_group(&self) -> &Arc<FiniteGroup> {
        &self.product
    }

    /// `(x_1, ..., x_n)` for `g = x_n ... x_1`.
    pub fn normal_form(&self, mut g: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for i in (1..self.len()).rev() {
            let below = self.groups[i - 1].order();
            out[i] = g / below;
            g %= below;
        }
        out[0] = g;
        out
    }

    /// Index of `x_n ... x_1` from `(x_1, ..., x_n)`; a shorter list names an
    /// element of the corresponding `G_i`.
    pub fn element(&self, xs: &[usize]) -> usize {
        let mut g = xs.first().copied().unwrap_or(0);
        for (i, &x) in xs.iter().enumerate().skip(1) {
            g += x * self.groups[i - 1].order();
        }
        g
    }

    /// `H_i` sitting inside `G`.
    pub fn embed_factor(&self, i: usize, x: usize) -> usize {
        let mut xs = vec![0; self.len()];
        xs[i - 1] = x;
        self.element(&xs)
    }

    fn product_index(&self, ys: &[usize]) -> usize {
        ys.iter().zip(&self.factors).fold(0, |acc, (&y, h)| acc * h.order() + y)
    }

    fn product_coords(&self, mut a: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (slot, h) in out.iter_mut().zip(&self.factors).rev() {
            *slot = a % h.order();
            a /= h.order();
        }
        out
    }

    /// `rho(x_n ... x_1)(y_1, ..., y_n) = (y_1, rho_1(x_1) y_2, ...,
    /// rho_{n-1}(x_{n-1} ... x_1) y_n)`.
    pub fn product_action(&self) -> Result<GroupAction> {
        let g = self.group();
        let na = self.product.order();
        let mut rows = Vec::with_capacity(g.order());
        let coords: Vec<Vec<usize>> = (0..na).map(|a| self.product_coords(a)).collect();
        for x in 0..g.order() {
            let row = coords
                .iter()
                .map(|ys| {
                    let moved: Vec<usize> = ys
                        .iter()
                        .enumerate()
                        .map(|(i, &y)| if i == 0 { y } else { self.actions[i - 1].apply(x % self.groups[i - 1].order(), y) })
                        .collect();
                    self.product_index(&moved)
                })
                .collect();
            rows.push(row);
        }
        GroupAction::from_table(Arc::clone(g), Arc::clone(&self.product), rows)
    }

    /// `pi(x_n ... x_1) = (x_1, ..., x_n)`, verified.
    pub fn cocycle(&self) -> Result<Cocycle> {
        let rho = self.product_action()?;
        let pi = (0..self.group().order()).map(|g| self.product_index(&self.normal_form(g))).collect();
        Cocycle::new(rho, pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::AbelianGroup;

    fn z(n: u32) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::abelian(&AbelianGroup::cyclic(n).unwrap()))
    }

    #[test]
    fn length_one_is_identity() {
        let h = Hierarchy::new(z(5), vec![]).unwrap();
        let c = h.cocycle().unwrap();
        assert!((0..5).all(|g| c.pi(g) == g));
    }

    #[test]
    fn trivial_action_gives_product_map() {
        let h2 = z(3);
        let act = GroupAction::trivial(z(2), Arc::clone(&h2));
        let h = Hierarchy::new(z(2), vec![(h2, act)]).unwrap();
        let c = h.cocycle().unwrap();
        assert!(h.group().is_abelian());
        // x_2 x_1 with x_1 = 1, x_2 = 2 sits at 2*2 + 1 and maps to (1, 2)
        assert_eq!(c.pi(5), 3 + 2);
    }

    #[test]
    fn negation_hierarchy_is_s3() {
        let (k, h3) = (z(2), z(3));
        let act = GroupAction::from_matrices(Arc::clone(&k), &AbelianGroup::cyclic(3).unwrap(), vec![(1, vec![vec![-1]])]).unwrap();
        let h = Hierarchy::new(k, vec![(h3, act)]).unwrap();
        assert!(!h.group().is_abelian());
        let c = h.cocycle().unwrap();
        for g in 0..6 {
            assert_eq!(h.element(&h.normal_form(g)), g);
            assert_eq!(c.pi_inv(c.pi(g)), g);
        }
    }

    #[test]
    fn action_must_start_at_previous_level() {
        let act = GroupAction::trivial(z(3), z(3));
        assert!(Hierarchy::new(z(2), vec![(z(3), act)]).is_err());
    }
}
