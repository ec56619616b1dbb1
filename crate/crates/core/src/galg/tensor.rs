use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;

use super::kernel;
use crate::cyclo::CycScalar;
use crate::error::{Error, Result};
use crate::grp::{same_group, FiniteGroup};

/// Sparse element of the `K`-fold tensor power of `C[G]`, keyed by dense
/// element indices. Coefficients all live at one conductor and zeros are
/// never stored.
#[derive(Clone)]
pub struct Tensor<const K: usize> {
    group: Arc<FiniteGroup>,
    conductor: u32,
    entries: BTreeMap<[u32; K], CycScalar>,
}

/// An element of the group algebra itself.
pub type GroupAlgebraElement = Tensor<1>;
pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const K: usize> fmt::Debug for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor<{K}>(|G|={}, N={}, {} terms)", self.group.order(), self.conductor, self.entries.len())
    }
}

impl<const K: usize> PartialEq for Tensor<K> {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.first_difference(other).is_none()
    }
}

impl<const K: usize> Tensor<K> {
    pub fn zero(group: Arc<FiniteGroup>, conductor: u32) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        Tensor { group, conductor, entries: BTreeMap::new() }
    }

    /// `e ⊗ ... ⊗ e`.
    pub fn unit(group: Arc<FiniteGroup>, conductor: u32) -> Self {
        Self::basis(group, conductor, [0; K])
    }

    pub fn basis(group: Arc<FiniteGroup>, conductor: u32, key: [u32; K]) -> Self {
        let mut t = Self::zero(group, conductor);
        t.entries.insert(key, CycScalar::one(conductor));
        t
    }

    /// Sums the given terms; scalars are embedded into the tensor's conductor.
    pub fn from_terms<I>(group: Arc<FiniteGroup>, conductor: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u32; K], CycScalar)>,
    {
        let mut t = Self::zero(group, conductor);
        for (key, c) in terms {
            if key.iter().any(|&g| g as usize >= t.group.order()) {
                return Err(Error::InvalidGroup(format!("key {key:?} is not a group element")));
            }
            t.add_term(key, &c.embed(conductor)?);
        }
        Ok(t)
    }

    /// Builds from already-reduced scalars at the right conductor; no checks.
    pub(crate) fn from_sorted_unchecked(group: Arc<FiniteGroup>, conductor: u32, terms: Vec<([u32; K], CycScalar)>) -> Self {
        Tensor { group, conductor, entries: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn add_term(&mut self, key: [u32; K], c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: [u32; K]) -> Option<&CycScalar> {
        self.entries.get(&key)
    }

    /// Coefficient at `key`, zero when absent.
    pub fn coeff(&self, key: [u32; K]) -> CycScalar {
        self.entries.get(&key).cloned().unwrap_or_else(|| CycScalar::zero(self.conductor))
    }

    /// Terms in canonical (lexicographic key) order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u32; K], &CycScalar)> {
        self.entries.iter()
    }

    pub fn is_unit(&self) -> bool {
        self.entries.len() == 1 && self.entries.get(&[0; K]).is_some_and(CycScalar::is_one)
    }

    /// The same tensor with coefficients embedded into `Q(z_M)`.
    pub fn with_conductor(&self, m: u32) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, c)| Ok((*k, c.embed(m)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Tensor { group: Arc::clone(&self.group), conductor: m, entries })
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Both operands moved to a common conductor.
    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        self.check_group(other)?;
        let m = self.conductor.lcm(&other.conductor);
        Ok((self.with_conductor(m)?, other.with_conductor(m)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned(other)?;
        for (k, c) in &b.entries {
            a.add_term(*k, c);
        }
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycScalar::from_integer(other.conductor, -1)))
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let m = self.conductor.lcm(&s.conductor());
        let s = s.embed(m).unwrap();
        let entries = self
            .entries
            .iter()
            .map(|(k, c)| (*k, &c.embed(m).unwrap() * &s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Tensor { group: Arc::clone(&self.group), conductor: m, entries }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&CycScalar::from_rational(self.conductor, q.clone()))
    }

    /// Leg-wise product `(a1⊗...)(b1⊗...) = a1 b1 ⊗ ...`, through the packed
    /// integer kernel when coefficients allow it.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(kernel::product(&a, &b).into_tensor(&a.group, a.conductor))
    }

    /// Reference product over `CycScalar` arithmetic; no packing, no threads.
    pub fn mul_naive(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let mut out = Self::zero(Arc::clone(&a.group), a.conductor);
        for (ka, ca) in &a.entries {
            for (kb, cb) in &b.entries {
                let mut key = [0u32; K];
                for i in 0..K {
                    key[i] = a.group.mul(ka[i] as usize, kb[i] as usize) as u32;
                }
                out.add_term(key, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// First key in canonical order where the two tensors differ.
    pub fn first_difference(&self, other: &Self) -> Option<[u32; K]> {
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some((ka, _)), None) => return Some(**ka),
                (None, Some((kb, _))) => return Some(**kb),
                (Some((ka, ca)), Some((kb, cb))) => {
                    if ka < kb {
                        return Some(**ka);
                    }
                    if kb < ka {
                        return Some(**kb);
                    }
                    if ca != cb {
                        return Some(**ka);
                    }
                    a.next();
                    b.next();
                }
            }
        }
    }

    /// Relabels keys through `f`, summing collisions. `f` may change arity.
    pub fn map_keys<const L: usize>(&self, group: Arc<FiniteGroup>, f: impl Fn([u32; K]) -> [u32; L]) -> Tensor<L> {
        let mut out = Tensor::<L>::zero(group, self.conductor);
        for (k, c) in &self.entries {
            out.add_term(f(*k), c);
        }
        out
    }

    /// `(phi ⊗ ... ⊗ phi)` for a map of group elements given as a table.
    pub fn push_forward(&self, group: Arc<FiniteGroup>, phi: &[usize]) -> Tensor<K> {
        self.map_keys(group, |k| k.map(|g| phi[g as usize] as u32))
    }

    /// Left multiplication of every leg by group elements.
    pub fn left_translate(&self, by: [u32; K]) -> Self {
        let g = Arc::clone(&self.group);
        self.map_keys(Arc::clone(&g), |k| {
            let mut out = [0u32; K];
            for i in 0..K {
                out[i] = g.mul(by[i] as usize, k[i] as usize) as u32;
            }
            out
        })
    }
}

impl Tensor2 {
    /// Swaps the two legs (the `21` subscript).
    pub fn flip(&self) -> Self {
        self.map_keys(Arc::clone(&self.group), |[a, b]| [b, a])
    }

    /// `(Δ ⊗ I)`: `(g, h) -> (g, g, h)`.
    pub fn coproduct_left(&self) -> Tensor3 {
        self.map_keys(Arc::clone(&self.group), |[a, b]| [a, a, b])
    }

    /// `(I ⊗ Δ)`: `(g, h) -> (g, h, h)`.
    pub fn coproduct_right(&self) -> Tensor3 {
        self.map_keys(Arc::clone(&self.group), |[a, b]| [a, b, b])
    }

    /// `X_12 = X ⊗ 1`.
    pub fn embed12(&self) -> Tensor3 {
        self.map_keys(Arc::clone(&self.group), |[a, b]| [a, b, 0])
    }

    /// `X_23 = 1 ⊗ X`.
    pub fn embed23(&self) -> Tensor3 {
        self.map_keys(Arc::clone(&self.group), |[a, b]| [0, a, b])
    }

    /// `(ε ⊗ I)(X)`: sums coefficients over the first leg.
    pub fn counit_left(&self) -> GroupAlgebraElement {
        self.map_keys(Arc::clone(&self.group), |[_, b]| [b])
    }

    /// `(I ⊗ ε)(X)`.
    pub fn counit_right(&self) -> GroupAlgebraElement {
        self.map_keys(Arc::clone(&self.group), |[a, _]| [a])
    }

    /// Applies the linear functional `g -> values[g]` to the second leg.
    pub fn contract_right(&self, values: &[CycScalar]) -> Result<GroupAlgebraElement> {
        let mut out = GroupAlgebraElement::zero(Arc::clone(&self.group), self.conductor);
        let m = values.iter().fold(self.conductor, |acc, v| acc.lcm(&v.conductor()));
        out = out.with_conductor(m)?;
        for (&[a, b], c) in &self.entries {
            let v = values[b as usize].embed(m)?;
            out.add_term([a], &(&c.embed(m)? * &v));
        }
        Ok(out)
    }
}

impl Tensor3 {
    /// Drops the identity third leg of a tensor of the form `X ⊗ 1`.
    pub fn project12(&self) -> Option<Tensor2> {
        self.entries.keys().all(|k| k[2] == 0).then(|| self.map_keys(Arc::clone(&self.group), |[a, b, _]| [a, b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_of_unity;
    use crate::grp::AbelianGroup;

    fn z3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::abelian(&AbelianGroup::cyclic(3).unwrap()))
    }

    fn sample(g: &Arc<FiniteGroup>) -> Tensor2 {
        Tensor2::from_terms(
            Arc::clone(g),
            3,
            [([0, 1], root_of_unity(3, 1)), ([2, 1], CycScalar::from_integer(3, 5)), ([1, 1], root_of_unity(3, 2))],
        )
        .unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let g = z3();
        let x = sample(&g);
        let u = Tensor2::unit(Arc::clone(&g), 3);
        assert_eq!(u.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&u).unwrap(), x);
    }

    #[test]
    fn flip_is_involution() {
        let x = sample(&z3());
        assert_eq!(x.flip().flip(), x);
        assert_ne!(x.flip(), x);
    }

    #[test]
    fn singleton_products() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = Tensor2::basis(Arc::clone(&g), 1, [3, 1]);
        let b = Tensor2::basis(Arc::clone(&g), 1, [4, 5]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Tensor2::basis(Arc::clone(&g), 1, [g.mul(3, 4) as u32, g.mul(1, 5) as u32]));
        assert_eq!(ab.len(), 1);
    }

    #[test]
    fn leg_maps() {
        let g = z3();
        let x = Tensor2::basis(Arc::clone(&g), 1, [1, 2]);
        assert!(x.coproduct_left().get([1, 1, 2]).is_some());
        assert!(x.coproduct_right().get([1, 2, 2]).is_some());
        assert!(x.embed12().get([1, 2, 0]).is_some());
        assert!(x.embed23().get([0, 1, 2]).is_some());
        let u = Tensor2::unit(Arc::clone(&g), 1);
        assert!(u.coproduct_left().is_unit());
        let sum = x.add(&u).unwrap();
        assert_eq!(sum.coproduct_left(), x.coproduct_left().add(&u.coproduct_left()).unwrap());
    }

    #[test]
    fn first_difference_reports_smallest_key() {
        let g = z3();
        let x = sample(&g);
        let y = x.add(&Tensor2::basis(Arc::clone(&g), 3, [1, 0])).unwrap();
        assert_eq!(x.first_difference(&y), Some([1, 0]));
        assert_eq!(x.first_difference(&x), None);
    }

    #[test]
    fn mixed_conductors_are_lifted() {
        let g = z3();
        let a = Tensor2::basis(Arc::clone(&g), 2, [1, 1]).scale(&root_of_unity(2, 1));
        let b = Tensor2::basis(Arc::clone(&g), 3, [1, 1]).scale(&root_of_unity(3, 1));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.conductor(), 6);
        assert_eq!(p.coeff([2, 2]), root_of_unity(6, 5));
    }
}
