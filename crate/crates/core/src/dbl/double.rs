use std::sync::Arc;

use num_rational::BigRational;

use crate::coc::{invariance_failure, Cocycle};
use crate::cyclo::CycScalar;
use crate::error::{Error, Result};
use crate::galg::{
    cocommutativity_failure, is_triangular, minimality, twisted_r, GroupAlgebraElement, Invertible2, MinimalityReport,
    Tensor2,
};
use crate::grp::{AbelianGroup, FiniteGroup, GroupAction};

/// The double `(G~, A~, rho~, pi~)` of a bijective 1-cocycle with abelian
/// coefficients: `G~ = G ⋉ A*` with elements `a* g` at index
/// `a* |G| + g`, and `A~ = A x A*` with `A` most significant.
#[derive(Clone, Debug)]
pub struct DoubleData {
    base: Cocycle,
    abelian: AbelianGroup,
    dual: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    coefficients: Arc<FiniteGroup>,
    cocycle: Cocycle,
    tmap: Vec<usize>,
}

/// Builds the double and checks every invariant on the way.
pub fn build_double(base: &Cocycle) -> Result<DoubleData> {
    let abelian = base.coefficients().as_abelian().ok_or(Error::NonAbelian)?.clone();
    let g = Arc::clone(base.group());
    let rho = base.action();
    let dual_act = rho.dual_action()?;
    let dual = Arc::clone(dual_act.target());
    let group = Arc::new(FiniteGroup::semidirect(Arc::clone(&g), Arc::clone(&dual), dual_act.clone())?);
    let coefficients = Arc::new(FiniteGroup::direct_product(base.coefficients(), &dual));
    let (ng, na) = (g.order(), abelian.order());

    // rho~(a* g) = rho(g) x rho*(g)^{-1}; the A* part acts trivially
    let rows = (0..group.order())
        .map(|t| {
            let gg = t % ng;
            (0..na * na).map(|c| rho.apply(gg, c / na) * na + dual_act.apply(gg, c % na)).collect()
        })
        .collect();
    let rhot = GroupAction::from_table(Arc::clone(&group), Arc::clone(&coefficients), rows)?;
    let pit = (0..group.order()).map(|t| base.pi(t % ng) * na + t / ng).collect();
    let cocycle = Cocycle::new(rhot, pit)?;

    // pi^{-1}(x^{-1}) pi^{-1}(T(x)) = 1
    let tmap: Vec<usize> = (0..na).map(|x| base.pi(g.inv(base.pi_inv(abelian.neg(x))))).collect();
    let mut seen = vec![false; na];
    for (x, &t) in tmap.iter().enumerate() {
        if g.mul(base.pi_inv(abelian.neg(x)), base.pi_inv(t)) != 0 || std::mem::replace(&mut seen[t], true) {
            return Err(Error::Postcondition(format!("T is not a bijection solving the defining equation at {x}")));
        }
    }
    Ok(DoubleData { base: base.clone(), abelian, dual, group, coefficients, cocycle, tmap })
}

impl DoubleData {
    pub fn base(&self) -> &Cocycle {
        &self.base
    }

    /// `A` as an abelian presentation.
    pub fn abelian(&self) -> &AbelianGroup {
        &self.abelian
    }

    /// `A*`, as a group.
    pub fn dual(&self) -> &Arc<FiniteGroup> {
        &self.dual
    }

    /// `G~ = G ⋉ A*`.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `A~ = A x A*`.
    pub fn coefficients(&self) -> &Arc<FiniteGroup> {
        &self.coefficients
    }

    /// `pi~(a* g) = (pi(g), a*)`.
    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn tmap(&self) -> &[usize] {
        &self.tmap
    }

    pub fn conductor(&self) -> u32 {
        self.abelian.exponent()
    }

    /// `a* g` as an index of `G~`.
    pub fn element(&self, dual: usize, g: usize) -> usize {
        dual * self.base.group().order() + g
    }

    fn inv_order(&self) -> BigRational {
        BigRational::new(1.into(), (self.abelian.order() as i64).into())
    }

    /// Closed-form inverse `|A|^{-1} sum e^{-(z,t*)} pi^{-1}(T(z)) ⊗ t*`.
    pub fn twist_inverse(&self) -> Tensor2 {
        let (a, n) = (&self.abelian, self.conductor());
        let terms = (0..a.order()).flat_map(|z| {
            (0..a.order()).map(move |t| {
                let key = [self.base.pi_inv(self.tmap[z]) as u32, self.element(t, 0) as u32];
                (key, CycScalar::root_of_unity(n, -(a.pair(z, t) as i64)).scale(&self.inv_order()))
            })
        });
        Tensor2::from_terms(Arc::clone(&self.group), n, terms).expect("keys are group elements")
    }

    /// `|A|^{-1} sum e^{(x,y*)} pi^{-1}(x) ⊗ y*`.
    pub fn twist(&self) -> Tensor2 {
        let (a, n) = (&self.abelian, self.conductor());
        let terms = (0..a.order()).flat_map(|x| {
            (0..a.order()).map(move |y| {
                let key = [self.base.pi_inv(x) as u32, self.element(y, 0) as u32];
                (key, CycScalar::root_of_unity(n, a.pair(x, y) as i64).scale(&self.inv_order()))
            })
        });
        Tensor2::from_terms(Arc::clone(&self.group), n, terms).expect("keys are group elements")
    }

    /// Closed-form R-matrix: coefficient `|A|^{-2} e^{(x,y*) - (y,x*)}` at
    /// `(x* pi^{-1}(x), pi^{-1}(T(y)) y*)`.
    pub fn r_matrix(&self) -> Tensor2 {
        let (a, n, g) = (&self.abelian, self.conductor(), &self.group);
        let na = a.order();
        let scale = self.inv_order() * self.inv_order();
        let mut terms = Vec::with_capacity(na.pow(4));
        for x in 0..na {
            for xs in 0..na {
                let left = self.element(xs, self.base.pi_inv(x)) as u32;
                for y in 0..na {
                    let gy = self.base.pi_inv(self.tmap[y]);
                    for ys in 0..na {
                        let right = g.mul(gy, self.element(ys, 0)) as u32;
                        let e = a.pair(x, ys) as i64 - a.pair(y, xs) as i64;
                        terms.push(([left, right], CycScalar::root_of_unity(n, e).scale(&scale)));
                    }
                }
            }
        }
        Tensor2::from_terms(Arc::clone(g), n, terms).expect("keys are group elements")
    }

    /// `(1⊗alpha)` for `alpha ∈ A`: the functional `y* -> e^{(alpha, y*)}` on
    /// the `A*` part of `G~`, zero elsewhere.
    pub fn evaluation(&self, alpha: usize) -> Vec<CycScalar> {
        let n = self.conductor();
        let mut vals = vec![CycScalar::zero(n); self.group.order()];
        for y in 0..self.abelian.order() {
            vals[self.element(y, 0)] = CycScalar::root_of_unity(n, self.abelian.pair(alpha, y) as i64);
        }
        vals
    }
}

/// `J = |A|^{-1} sum e^{(x,y*)} x ⊗ y*` on `C[A x A*]`.
pub fn fourier_twist(a: &AbelianGroup) -> Tensor2 {
    let na = a.order();
    let group = Arc::new(FiniteGroup::abelian(&a.product(&a.character_group())));
    let scale = BigRational::new(1.into(), (na as i64).into());
    let mut terms = Vec::with_capacity(na * na);
    for x in 0..na {
        for y in 0..na {
            terms.push(([(x * na) as u32, y as u32], CycScalar::root_of_unity(a.exponent(), a.pair(x, y) as i64).scale(&scale)));
        }
    }
    Tensor2::from_terms(group, a.exponent(), terms).expect("keys are group elements")
}

/// The double twist with its closed-form inverse, checked on both sides.
pub fn double_twist(d: &DoubleData) -> Result<Invertible2> {
    Invertible2::new(d.twist(), d.twist_inverse())
}

/// Outcome of the inverse formula and the contraction identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop41Report {
    pub left_unit: bool,
    pub right_unit: bool,
    /// Characters `alpha` where a contraction identity fails.
    pub contraction_failures: Vec<usize>,
}

impl Prop41Report {
    pub fn holds(&self) -> bool {
        self.left_unit && self.right_unit && self.contraction_failures.is_empty()
    }
}

pub fn prop41_check(d: &DoubleData) -> Result<Prop41Report> {
    let (j, inv) = (d.twist(), d.twist_inverse());
    let left_unit = inv.mul(&j)?.is_unit();
    let right_unit = j.mul(&inv)?.is_unit();
    let a = d.abelian();
    let mut contraction_failures = Vec::new();
    for alpha in 0..a.order() {
        let vals = d.evaluation(alpha);
        let n = d.conductor();
        let want_j = GroupAlgebraElement::basis(Arc::clone(d.group()), n, [d.base().pi_inv(a.neg(alpha)) as u32]);
        let want_inv = GroupAlgebraElement::basis(Arc::clone(d.group()), n, [d.base().pi_inv(d.tmap()[alpha]) as u32]);
        if j.contract_right(&vals)? != want_j || inv.contract_right(&vals)? != want_inv {
            contraction_failures.push(alpha);
        }
    }
    Ok(Prop41Report { left_unit, right_unit, contraction_failures })
}

/// Closed-form R against the brute-force R, plus triangularity, rank and
/// non-cocommutativity of the twisted coproduct.
#[derive(Clone, Debug)]
pub struct DoubleReport {
    pub difference: Option<[u32; 2]>,
    pub triangular: bool,
    pub minimality: MinimalityReport,
    /// An element whose twisted coproduct is not flip-symmetric.
    pub noncocommutative_witness: Option<usize>,
}

impl DoubleReport {
    pub fn holds(&self) -> bool {
        self.difference.is_none() && self.triangular && self.minimality.is_minimal()
    }
}

pub fn double_check(d: &DoubleData) -> Result<DoubleReport> {
    let j = double_twist(d)?;
    let closed = d.r_matrix();
    Ok(DoubleReport {
        difference: closed.first_difference(&twisted_r(&j)?),
        triangular: is_triangular(&closed),
        minimality: minimality(&closed),
        noncocommutative_witness: cocommutativity_failure(&j)?,
    })
}

/// `G`-invariance of the Fourier twist under `rho~`; the first moving
/// element of `G~`, if any.
pub fn fourier_invariance_failure(d: &DoubleData) -> Option<usize> {
    invariance_failure(d.cocycle(), &fourier_twist(d.abelian()))
}
