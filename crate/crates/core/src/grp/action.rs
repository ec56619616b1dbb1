use std::collections::VecDeque;
use std::sync::Arc;

use super::abelian::AbelianGroup;
use super::finite::{same_group, FiniteGroup};
use crate::error::{Error, Result};

/// Homomorphism between abelian groups given by an integer matrix on
/// coordinates: `y_i = sum_j m[i][j] x_j mod n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    source: AbelianGroup,
    target: AbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl AbelianHom {
    /// Rejects matrices that are not well defined on the factor orders, i.e.
    /// unless `n_i | m_ij * n_j`.
    pub fn new(source: AbelianGroup, target: AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::InvalidAction(format!(
                "matrix shape does not match {} -> {}",
                source, target
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            let ni = target.factors()[i] as i64;
            for (j, &m) in row.iter().enumerate() {
                let nj = source.factors()[j] as i64;
                if (m * nj).rem_euclid(ni) != 0 {
                    return Err(Error::InvalidAction(format!(
                        "entry ({},{}) = {m} is not compatible with Z{nj} -> Z{ni}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(AbelianHom { source, target, matrix })
    }

    pub fn identity(a: &AbelianGroup) -> Self {
        let k = a.rank();
        let matrix = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        AbelianHom { source: a.clone(), target: a.clone(), matrix }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: usize) -> usize {
        let c = self.source.coords(x);
        let y: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&c).map(|(&m, &xj)| m * xj as i64).sum())
            .collect();
        self.target.index_of(&y)
    }

    /// Full image table, `table[x] = self(x)`.
    pub fn table(&self) -> Vec<usize> {
        (0..self.source.order()).map(|x| self.apply(x)).collect()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.table().into_iter().all(|y| !std::mem::replace(&mut seen[y], true))
    }
}

/// An action of a finite group on another by automorphisms, stored as a dense
/// image table `images[g * |A| + a] = rho(g)(a)`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<u32>,
}

impl GroupAction {
    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let n = target.order();
        let images = (0..source.order()).flat_map(|_| 0..n as u32).collect();
        GroupAction { source, target, images }
    }

    /// From the full table of automorphisms, one row per element of the source.
    pub fn from_table(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != source.order() || rows.iter().any(|r| r.len() != target.order()) {
            return Err(Error::InvalidAction("action table has the wrong shape".into()));
        }
        if rows.iter().flatten().any(|&x| x >= target.order()) {
            return Err(Error::InvalidAction("action table entry out of range".into()));
        }
        let images = rows.into_iter().flatten().map(|x| x as u32).collect();
        let act = GroupAction { source, target, images };
        act.verify()?;
        Ok(act)
    }

    /// Extends images of generators to the whole source group by closure.
    /// Every element must be reachable and the images must be consistent.
    pub fn from_generators(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        gens: Vec<(usize, Vec<usize>)>,
    ) -> Result<Self> {
        let (ng, na) = (source.order(), target.order());
        for (g, img) in &gens {
            if *g >= ng || img.len() != na || img.iter().any(|&x| x >= na) {
                return Err(Error::InvalidAction("generator image has the wrong shape".into()));
            }
        }
        let mut known: Vec<Option<Vec<u32>>> = vec![None; ng];
        known[0] = Some((0..na as u32).collect());
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            let rg = known[g].clone().unwrap();
            for (s, img) in &gens {
                // rho(g s) = rho(g) o rho(s)
                let composed: Vec<u32> = img.iter().map(|&a| rg[a]).collect();
                let gs = source.mul(g, *s);
                match &known[gs] {
                    Some(prev) if *prev != composed => {
                        return Err(Error::InvalidAction(format!(
                            "generator images are inconsistent at element {gs}"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        known[gs] = Some(composed);
                        queue.push_back(gs);
                    }
                }
            }
        }
        let mut images = Vec::with_capacity(ng * na);
        for (g, row) in known.into_iter().enumerate() {
            let row = row.ok_or_else(|| Error::InvalidAction(format!("generators do not reach element {g}")))?;
            images.extend(row);
        }
        let act = GroupAction { source, target, images };
        act.verify()?;
        Ok(act)
    }

    /// Action on an abelian group through one coordinate matrix per generator.
    pub fn from_matrices(source: Arc<FiniteGroup>, target: &AbelianGroup, gens: Vec<(usize, Vec<Vec<i64>>)>) -> Result<Self> {
        let tgt = Arc::new(FiniteGroup::abelian(target));
        let gens = gens
            .into_iter()
            .map(|(g, m)| Ok((g, AbelianHom::new(target.clone(), target.clone(), m)?.table())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(source, tgt, gens)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize, a: usize) -> usize {
        self.images[g * self.target.order() + a] as usize
    }

    pub fn automorphism(&self, g: usize) -> &[u32] {
        let n = self.target.order();
        &self.images[g * n..(g + 1) * n]
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.target.order();
        self.images.chunks(n).all(|row| row.iter().enumerate().all(|(i, &x)| i == x as usize))
    }

    /// Each `rho(g)` is an automorphism and `rho(g g') = rho(g) rho(g')`.
    pub fn verify(&self) -> Result<()> {
        let (ng, na) = (self.source.order(), self.target.order());
        for g in 0..ng {
            let row = self.automorphism(g);
            let mut seen = vec![false; na];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidAction(format!("rho({g}) is not a bijection")));
                }
            }
            for a in 0..na {
                for b in 0..na {
                    if row[self.target.mul(a, b)] as usize != self.target.mul(row[a] as usize, row[b] as usize) {
                        return Err(Error::InvalidAction(format!("rho({g}) is not a homomorphism")));
                    }
                }
            }
        }
        for g in 0..ng {
            for h in 0..ng {
                let gh = self.source.mul(g, h);
                for a in 0..na {
                    if self.apply(gh, a) != self.apply(g, self.apply(h, a)) {
                        return Err(Error::InvalidAction(format!("rho({g}*{h}) != rho({g}) rho({h})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `g -> rho*(g)^{-1}` on the character group, where `(rho*(g) chi)(a) =
    /// chi(rho(g) a)`. Requires an abelian target.
    pub fn dual_action(&self) -> Result<GroupAction> {
        let a = self.target.as_abelian().ok_or(Error::NonAbelian)?.clone();
        let dual = a.character_group();
        let n = a.exponent();
        let na = a.order();
        let mut images = Vec::with_capacity(self.source.order() * na);
        for g in 0..self.source.order() {
            let ginv = self.source.inv(g);
            let moved: Vec<usize> = (0..a.rank()).map(|i| self.apply(ginv, a.basis(i))).collect();
            for chi in 0..na {
                // new exponent m'_i = pair(rho(g^-1) e_i, chi) / (N / n_i)
                let m: Vec<i64> = moved
                    .iter()
                    .zip(a.factors())
                    .map(|(&y, &ni)| (a.pair(y, chi) / (n / ni)) as i64)
                    .collect();
                images.push(dual.index_of(&m) as u32);
            }
        }
        Ok(GroupAction {
            source: Arc::clone(&self.source),
            target: Arc::new(FiniteGroup::abelian(&dual)),
            images,
        })
    }

    /// Product action `g -> self(g) x other(g)` on the direct product of the
    /// targets, first target most significant.
    pub fn product(&self, other: &GroupAction) -> Result<GroupAction> {
        if !same_group(&self.source, &other.source) {
            return Err(Error::GroupMismatch);
        }
        let target = Arc::new(FiniteGroup::direct_product(&self.target, &other.target));
        let (n1, n2) = (self.target.order(), other.target.order());
        let mut images = Vec::with_capacity(self.source.order() * n1 * n2);
        for g in 0..self.source.order() {
            for x in 0..n1 {
                for y in 0..n2 {
                    images.push((self.apply(g, x) * n2 + other.apply(g, y)) as u32);
                }
            }
        }
        Ok(GroupAction { source: Arc::clone(&self.source), target, images })
    }

    /// The same automorphisms seen through a homomorphism `f: S -> source`.
    pub fn pull_back(&self, new_source: Arc<FiniteGroup>, f: &[usize]) -> Result<GroupAction> {
        if f.len() != new_source.order() || f.iter().any(|&x| x >= self.source.order()) {
            return Err(Error::InvalidAction("map into the acting group has the wrong shape".into()));
        }
        let images = f.iter().flat_map(|&g| self.automorphism(g).iter().copied()).collect();
        let act = GroupAction { source: new_source, target: Arc::clone(&self.target), images };
        act.verify()?;
        Ok(act)
    }
}

/// Checks `pair(rho(g) a, dual(g) chi) = pair(a, chi)` for every triple.
pub fn dual_invariance_holds(rho: &GroupAction, dual: &GroupAction) -> Result<bool> {
    let a = rho.target().as_abelian().ok_or(Error::NonAbelian)?;
    for g in 0..rho.source().order() {
        for x in 0..a.order() {
            for chi in 0..a.order() {
                if a.pair(rho.apply(g, x), dual.apply(g, chi)) != a.pair(x, chi) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn negation_on_z3() -> GroupAction {
        let k = Arc::new(FiniteGroup::abelian(&z(2)));
        GroupAction::from_matrices(k, &z(3), vec![(1, vec![vec![-1]])]).unwrap()
    }

    #[test]
    fn matrix_compatibility() {
        assert!(AbelianHom::new(z(2), z(4), vec![vec![2]]).is_ok());
        assert!(AbelianHom::new(z(2), z(4), vec![vec![1]]).is_err());
        assert!(AbelianHom::new(z(4), z(2), vec![vec![1]]).is_ok());
    }

    #[test]
    fn negation_closes_to_semidirect_s3() {
        let act = negation_on_z3();
        assert_eq!(act.apply(1, 1), 2);
        let g = FiniteGroup::semidirect(Arc::clone(act.source()), Arc::clone(act.target()), act).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        g.verify_axioms().unwrap();
    }

    #[test]
    fn trivial_semidirect_is_direct_product() {
        let a = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let b = Arc::new(FiniteGroup::abelian(&z(2)));
        let d = FiniteGroup::direct_product(&a, &b);
        for x in 0..6 {
            for y in 0..2 {
                for x2 in 0..6 {
                    for y2 in 0..2 {
                        assert_eq!(d.mul(x * 2 + y, x2 * 2 + y2), a.mul(x, x2) * 2 + b.mul(y, y2));
                    }
                }
            }
        }
    }

    #[test]
    fn inconsistent_generators_rejected() {
        let k = Arc::new(FiniteGroup::abelian(&z(3)));
        // an order-2 automorphism cannot be the image of an order-3 generator
        assert!(GroupAction::from_matrices(k, &z(3), vec![(1, vec![vec![-1]])]).is_err());
    }

    #[test]
    fn dual_of_negation_negates() {
        let act = negation_on_z3();
        let dual = act.dual_action().unwrap();
        assert_eq!(dual.automorphism(1), &[0, 2, 1]);
        assert!(dual_invariance_holds(&act, &dual).unwrap());
        let triv = GroupAction::trivial(Arc::clone(act.source()), Arc::clone(act.target()));
        assert!(triv.dual_action().unwrap().is_trivial());
    }
}
