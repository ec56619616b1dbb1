use std::collections::VecDeque;

use super::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::grp::{generating_sequence, GroupAction};

/// Largest `|G|` accepted by [`search_cocycles`].
pub const SEARCH_LIMIT: usize = 36;

const UNSET: usize = usize::MAX;

/// Every bijective 1-cocycle for `rho`, sorted by their `pi` tables.
///
/// Backtracks over the images of a generating sequence; each assignment is
/// propagated through `pi(g s) = pi(g) (g . pi(s))` over the subgroup
/// generated so far, rejecting conflicts and repeated values.
pub fn search_cocycles(rho: &GroupAction) -> Result<Vec<Cocycle>> {
    let (g, a) = (rho.source(), rho.target());
    if g.order() > SEARCH_LIMIT {
        return Err(Error::SearchLimit(g.order()));
    }
    if g.order() != a.order() {
        return Ok(Vec::new());
    }
    let gens = generating_sequence(g);
    let mut pi = vec![UNSET; g.order()];
    pi[0] = 0;
    let mut used = vec![false; a.order()];
    used[0] = true;
    let mut found = Vec::new();
    extend(rho, &gens, 0, &mut pi, &mut used, &mut found);
    found.sort();
    found.into_iter().map(|t| Cocycle::new(rho.clone(), t)).collect()
}

fn extend(rho: &GroupAction, gens: &[usize], depth: usize, pi: &mut Vec<usize>, used: &mut Vec<bool>, found: &mut Vec<Vec<usize>>) {
    if depth == gens.len() {
        if pi.iter().all(|&x| x != UNSET) {
            found.push(pi.clone());
        }
        return;
    }
    for cand in 0..rho.target().order() {
        if used[cand] {
            continue;
        }
        let (saved_pi, saved_used) = (pi.clone(), used.clone());
        pi[gens[depth]] = cand;
        used[cand] = true;
        if propagate(rho, &gens[..=depth], pi, used) {
            extend(rho, gens, depth + 1, pi, used, found);
        }
        *pi = saved_pi;
        *used = saved_used;
    }
}

/// Closes the assignment under right multiplication by assigned generators.
fn propagate(rho: &GroupAction, gens: &[usize], pi: &mut [usize], used: &mut [bool]) -> bool {
    let (g, a) = (rho.source(), rho.target());
    let mut queue: VecDeque<usize> = (0..g.order()).filter(|&x| pi[x] != UNSET).collect();
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let xs = g.mul(x, s);
            let val = a.mul(pi[x], rho.apply(x, pi[s]));
            if pi[xs] == UNSET {
                if used[val] {
                    return false;
                }
                pi[xs] = val;
                used[val] = true;
                queue.push_back(xs);
            } else if pi[xs] != val {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::{AbelianGroup, FiniteGroup};

    fn z(n: u32) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::abelian(&AbelianGroup::cyclic(n).unwrap()))
    }

    #[test]
    fn automorphisms_of_z3() {
        let found = search_cocycles(&GroupAction::trivial(z(3), z(3))).unwrap();
        let tables: Vec<&[usize]> = found.iter().map(|c| c.table()).collect();
        assert_eq!(tables, vec![&[0, 1, 2][..], &[0, 2, 1][..]]);
    }

    #[test]
    fn z2_has_one() {
        assert_eq!(search_cocycles(&GroupAction::trivial(z(2), z(2))).unwrap().len(), 1);
    }

    #[test]
    fn mismatched_orders_give_nothing() {
        assert!(search_cocycles(&GroupAction::trivial(z(2), z(3))).unwrap().is_empty());
    }

    #[test]
    fn trivial_action_counts_isomorphisms() {
        // with trivial action a bijective cocycle is an isomorphism G -> A
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let v4 = Arc::new(FiniteGroup::abelian(&a));
        assert_eq!(search_cocycles(&GroupAction::trivial(Arc::clone(&v4), Arc::clone(&v4))).unwrap().len(), 6);
        assert_eq!(search_cocycles(&GroupAction::trivial(z(4), v4)).unwrap().len(), 0);
    }

    #[test]
    fn size_limit() {
        let big = z(37);
        assert_eq!(search_cocycles(&GroupAction::trivial(Arc::clone(&big), big)).unwrap_err(), Error::SearchLimit(37));
    }
}
