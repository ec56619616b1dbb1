use std::sync::Arc;

use super::double::{build_double, fourier_twist, DoubleData};
use crate::coc::{Cocycle, Hierarchy};
use crate::error::{Error, Result};
use crate::galg::Tensor2;
use crate::grp::{AbelianGroup, FiniteGroup, GroupAction};

/// `pi_2` of the example as a list of (permutation, value).
const PI2: [(&str, usize); 6] = [("id", 0), ("(123)", 1), ("(132)", 2), ("(12)", 2), ("(13)", 0), ("(23)", 1)];

fn is_odd(s3: &FiniteGroup, g: usize) -> bool {
    // transpositions have order 2 in S3
    s3.element_order(g) == 2
}

/// `S3` acting on `Z2 x Z3` by `s(a, b) = (a, sign(s) b)`.
pub fn example43_action() -> Result<GroupAction> {
    let s3 = Arc::new(FiniteGroup::symmetric(3)?);
    let a = AbelianGroup::new(vec![2, 3])?;
    let rows = (0..6)
        .map(|g| {
            let sign = if is_odd(&s3, g) { -1 } else { 1 };
            (0..6)
                .map(|x| {
                    let c = a.coords(x);
                    a.index_of(&[c[0] as i64, sign * c[1] as i64])
                })
                .collect()
        })
        .collect();
    GroupAction::from_table(s3, Arc::new(FiniteGroup::abelian(&a)), rows)
}

/// The printed table `g -> (pi_1(g), pi_2(g))`, indexed by `S3` elements.
pub fn example43_table(s3: &FiniteGroup) -> Result<Vec<usize>> {
    let mut table = vec![usize::MAX; 6];
    for (label, p2) in PI2 {
        let g = s3.parse_element(label)?;
        table[g] = usize::from(is_odd(s3, g)) * 3 + p2;
    }
    Ok(table)
}

/// The example's bijective 1-cocycle, verified against `pi(gg') = pi(g) (g pi(g'))`.
pub fn example43_cocycle() -> Result<Cocycle> {
    let rho = example43_action()?;
    let table = example43_table(rho.source())?;
    Cocycle::new(rho, table)
}

/// The double of the example, on a group of order 36.
pub fn example_4_3() -> Result<DoubleData> {
    build_double(&example43_cocycle()?)
}

/// Rebuilds the example's twist as a hierarchy twist `J_2 J_1` with
/// `H_1 = Z2 x Z2*`, `H_2 = Z3 x Z3*`, the first coordinate of `H_1`
/// negating `H_2`, and Fourier twists on both levels; then carries it to
/// `G~` through `pi~^{-1} ∘ regroup ∘ pi`, which is checked to be a group
/// isomorphism.
pub fn example43_hierarchy_twist(d: &DoubleData) -> Result<Tensor2> {
    let a = d.abelian();
    if a.factors() != [2, 3] {
        return Err(Error::InvalidGroup("expected A = Z2 x Z3".into()));
    }
    let j1 = fourier_twist(&AbelianGroup::cyclic(2)?);
    let j2 = fourier_twist(&AbelianGroup::cyclic(3)?);
    let (h1, h2) = (Arc::clone(j1.group()), Arc::clone(j2.group()));
    let z3z3 = h2.as_abelian().expect("abelian").clone();
    let h1a = h1.as_abelian().expect("abelian");
    let gens = vec![(h1a.basis(0), vec![vec![-1, 0], vec![0, -1]]), (h1a.basis(1), vec![vec![1, 0], vec![0, 1]])];
    let act = GroupAction::from_matrices(Arc::clone(&h1), &z3z3, gens)?;
    let hier = Hierarchy::new(Arc::clone(&h1), vec![(Arc::clone(&h2), act)])?;
    let g = Arc::clone(hier.group());

    let e1: Vec<usize> = (0..h1.order()).map(|x| hier.embed_factor(1, x)).collect();
    let e2: Vec<usize> = (0..h2.order()).map(|x| hier.embed_factor(2, x)).collect();
    let n = d.conductor();
    let jbar = j2.push_forward(Arc::clone(&g), &e2).with_conductor(n)?.mul(&j1.push_forward(Arc::clone(&g), &e1).with_conductor(n)?)?;

    // (a, a*) in H_1 and (b, b*) in H_2 regroup to ((a, b), (a*, b*))
    let phi: Vec<usize> = (0..g.order())
        .map(|x| {
            let nf = hier.normal_form(x);
            let (aa, ad) = (nf[0] / 2, nf[0] % 2);
            let (b, bd) = (nf[1] / 3, nf[1] % 3);
            let tilde = (aa * 3 + b) * 6 + ad * 3 + bd;
            d.cocycle().pi_inv(tilde)
        })
        .collect();
    let gt = d.group();
    for x in 0..g.order() {
        for y in 0..g.order() {
            if phi[g.mul(x, y)] != gt.mul(phi[x], phi[y]) {
                return Err(Error::Postcondition(format!("regrouping map is not a homomorphism at ({x}, {y})")));
            }
        }
    }
    Ok(jbar.push_forward(Arc::clone(gt), &phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coc::{ess_counterexample, invert_convention, verify_cocycle};
    use crate::grp::is_solvable;

    #[test]
    fn printed_values() {
        let c = example43_cocycle().unwrap();
        let g = c.group();
        let a = c.coefficients().as_abelian().unwrap().clone();
        let at = |label: &str| a.coords(c.pi(g.parse_element(label).unwrap()));
        assert_eq!(at("(132)")[1], 2);
        assert_eq!(at("(12)")[0], 1);
        assert_eq!(at("(123)"), vec![0, 1]);
        assert_eq!(at("id"), vec![0, 0]);
    }

    #[test]
    fn altered_table_fails() {
        let rho = example43_action().unwrap();
        let mut t = example43_table(rho.source()).unwrap();
        let g12 = rho.source().parse_element("(12)").unwrap();
        t[g12] = 3; // pi_2((12)) = 0 instead of 2
        let rep = verify_cocycle(&rho, &t);
        assert!(!rep.holds());
        assert!(rep.counterexample.is_some());
    }

    #[test]
    fn other_convention_after_inversion() {
        let c = example43_cocycle().unwrap();
        let sigma = invert_convention(c.group(), c.table());
        assert_eq!(ess_counterexample(c.action(), &sigma), None);
        // the printed table itself does not satisfy the other equation
        assert!(ess_counterexample(c.action(), c.table()).is_some());
    }

    #[test]
    fn double_has_order_36_and_is_solvable() {
        let d = example_4_3().unwrap();
        assert_eq!(d.group().order(), 36);
        assert!(!d.group().is_abelian());
        assert!(is_solvable(d.group()));
    }
}
