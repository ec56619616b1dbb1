use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;

use super::structure::{dense_tensor, root_table, SymplecticStructure};
use crate::coc::Hierarchy;
use crate::error::{Error, Result};
use crate::galg::{is_triangular, is_twist, minimality, twisted_r, Invertible2, MinimalityReport, Tensor2, TwistReport};
use crate::grp::GroupAction;

/// A hierarchy whose factors all carry symplectic structures preserved by
/// the actions.
#[derive(Clone, Debug)]
pub struct SymplecticHierarchy {
    levels: Vec<SymplecticStructure>,
    hierarchy: Hierarchy,
}

impl SymplecticHierarchy {
    /// `rest[k]` is `(B_{k+2}, rho_{k+1})`; each `rho_{k+1}(g)` must preserve
    /// the form of `B_{k+2}`.
    pub fn new(first: SymplecticStructure, rest: Vec<(SymplecticStructure, GroupAction)>) -> Result<Self> {
        let mut levels = vec![first];
        let mut data = Vec::with_capacity(rest.len());
        for (s, act) in rest {
            data.push((Arc::clone(s.group()), act));
            levels.push(s);
        }
        let hierarchy = Hierarchy::new(Arc::clone(levels[0].group()), data)?;
        for i in 2..=levels.len() {
            let act = hierarchy.action(i);
            if let Some(g) = (0..act.source().order()).find(|&g| !levels[i - 1].preserves_form(act.automorphism(g))) {
                return Err(Error::InvalidSymplectic(format!(
                    "level {i}: rho({}) moves B_{i}",
                    act.source().label(g)
                )));
            }
        }
        Ok(SymplecticHierarchy { levels, hierarchy })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `B_i`, 1-based.
    pub fn level(&self, i: usize) -> &SymplecticStructure {
        &self.levels[i - 1]
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }

    pub fn group(&self) -> &Arc<crate::grp::FiniteGroup> {
        self.hierarchy.group()
    }

    /// Common conductor, the lcm of the factor exponents.
    pub fn conductor(&self) -> u32 {
        self.levels.iter().fold(1u32, |acc, s| acc.lcm(&s.conductor()))
    }

    /// `J_i` and its inverse pushed into `C[G]⊗C[G]` along `H_i ⊂ G`.
    pub fn embedded_twist(&self, i: usize) -> Result<(Tensor2, Tensor2)> {
        let emb: Vec<usize> = (0..self.level(i).group().order()).map(|x| self.hierarchy.embed_factor(i, x)).collect();
        let n = self.conductor();
        let s = self.level(i);
        Ok((
            s.twist().push_forward(Arc::clone(self.group()), &emb).with_conductor(n)?,
            s.twist_inverse().push_forward(Arc::clone(self.group()), &emb).with_conductor(n)?,
        ))
    }

    /// `J_1 ⊗ ... ⊗ J_n` on `C[A]`, `A = H_1 x ... x H_n`.
    pub fn product_twist(&self) -> Tensor2 {
        let a = self.hierarchy.product_group();
        let n = self.conductor();
        let orders: Vec<usize> = self.levels.iter().map(|s| s.group().order()).collect();
        let coords = |mut idx: usize| {
            let mut out = vec![0; orders.len()];
            for (slot, &o) in out.iter_mut().zip(&orders).rev() {
                *slot = idx % o;
                idx /= o;
            }
            out
        };
        let table: Vec<Vec<usize>> = (0..a.order()).map(coords).collect();
        let scale = BigRational::new(1.into(), (a.order() as i64).into());
        dense_tensor(a, n, &scale, |x, y| {
            self.levels
                .iter()
                .enumerate()
                .map(|(i, s)| s.form(table[x][i], table[y][i]) * (n / s.conductor()))
                .sum::<u32>()
                % n
        })
    }
}

/// `J_n ... J_1` with the inverse `J_1^{-1} ... J_n^{-1}`, both sides checked
/// by multiplication.
pub fn hierarchy_invertible(h: &SymplecticHierarchy) -> Result<Invertible2> {
    let (mut j, mut inv) = h.embedded_twist(1)?;
    for i in 2..=h.len() {
        let (ji, ii) = h.embedded_twist(i)?;
        j = ji.mul(&j)?;
        inv = inv.mul(&ii)?;
    }
    Invertible2::new(j, inv)
}

/// The hierarchy twist with its twist-equation report.
#[derive(Clone, Debug)]
pub struct HierarchyTwist {
    pub twist: Invertible2,
    pub report: TwistReport,
}

pub fn hierarchy_twist(h: &SymplecticHierarchy) -> Result<HierarchyTwist> {
    let twist = hierarchy_invertible(h)?;
    let report = is_twist(twist.elem());
    Ok(HierarchyTwist { twist, report })
}

/// Closed-form R-matrix of the twisted algebra.
///
/// The coefficient at `(x_n...x_1, y_n...y_1)` is `|G|^{-1}` times `e` to
/// the sum over `j` of `<rho_{j-1}(w_{j-1}(x))^{-1} x_j,
/// rho_{j-1}(w_{j-1}(y))^{-1} y_j^{1/2}>_j` with `w_{j-1}(x) =
/// x_{j-1}^{1/2}...x_1^{1/2}`; the `j = 1` term has no automorphism.
pub fn theorem31_r(h: &SymplecticHierarchy) -> Result<Tensor2> {
    let hier = &h.hierarchy;
    let g = hier.group();
    let n = h.conductor();
    // per element: the two arguments of each summand, computed once
    let mut left = vec![Vec::with_capacity(h.len()); g.order()];
    let mut right = vec![Vec::with_capacity(h.len()); g.order()];
    for x in 0..g.order() {
        let nf = hier.normal_form(x);
        let roots: Vec<usize> =
            nf.iter().enumerate().map(|(i, &xi)| h.levels[i].abelian().sqrt(xi)).collect::<Result<_>>()?;
        left[x].push(nf[0]);
        right[x].push(roots[0]);
        for j in 2..=h.len() {
            let below = hier.level_group(j - 1);
            let w_inv = below.inv(hier.element(&roots[..j - 1]));
            let act = hier.action(j);
            left[x].push(act.apply(w_inv, nf[j - 1]));
            right[x].push(act.apply(w_inv, roots[j - 1]));
        }
    }
    let scale = BigRational::new(1.into(), (g.order() as i64).into());
    let table = root_table(n, &scale);
    let mut terms = Vec::with_capacity(g.order() * g.order());
    for x in 0..g.order() {
        for y in 0..g.order() {
            let e: u32 = h
                .levels
                .iter()
                .enumerate()
                .map(|(j, s)| s.form(left[x][j], right[y][j]) * (n / s.conductor()))
                .sum();
            terms.push(([x as u32, y as u32], table[(e % n) as usize].clone()));
        }
    }
    Ok(Tensor2::from_sorted_unchecked(Arc::clone(g), n, terms))
}

/// Closed form against the R-matrix computed from the twist.
#[derive(Clone, Debug)]
pub struct Theorem31Report {
    /// First key where the closed form and `J_21^{-1} J` differ.
    pub difference: Option<[u32; 2]>,
    pub triangular: bool,
    pub minimality: MinimalityReport,
}

impl Theorem31Report {
    pub fn holds(&self) -> bool {
        self.difference.is_none() && self.triangular && self.minimality.is_minimal()
    }
}

pub fn theorem31_check(h: &SymplecticHierarchy) -> Result<Theorem31Report> {
    let closed = theorem31_r(h)?;
    let brute = twisted_r(&hierarchy_invertible(h)?)?;
    Ok(Theorem31Report {
        difference: closed.first_difference(&brute),
        triangular: is_triangular(&closed),
        minimality: minimality(&closed),
    })
}

/// `rho(e_1) = [[1,1],[0,1]]`, `rho(e_2) = I` on `Z_p x Z_p` with the
/// standard form; an order-`p` symplectic action of `Z_p x Z_p`.
pub fn unipotent_action(acting: &SymplecticStructure, on: &SymplecticStructure) -> Result<GroupAction> {
    let k = acting.abelian();
    let h = on.abelian();
    if h.rank() != 2 || k.rank() != 2 {
        return Err(Error::InvalidAction("unipotent action needs rank-2 groups".into()));
    }
    let gens = vec![(k.basis(0), vec![vec![1, 1], vec![0, 1]]), (k.basis(1), vec![vec![1, 0], vec![0, 1]])];
    GroupAction::from_matrices(Arc::clone(acting.group()), h, gens)
}
