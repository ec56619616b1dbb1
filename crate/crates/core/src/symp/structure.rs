use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::CycScalar;
use crate::error::{Error, Result};
use crate::galg::{Invertible2, Tensor2};
use crate::grp::{AbelianGroup, AbelianHom, FiniteGroup};

/// `scale * z_N^e` for every `e` in `0..N`.
pub(crate) fn root_table(n: u32, scale: &BigRational) -> Vec<CycScalar> {
    (0..n as i64).map(|e| CycScalar::root_of_unity(n, e).scale(scale)).collect()
}

/// `sum_e counts[e] z_N^e * scale`.
pub(crate) fn from_exponent_counts(n: u32, counts: &[i64], scale: &BigRational) -> CycScalar {
    let coeffs: Vec<BigRational> = counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c)) * scale).collect();
    CycScalar::from_poly_coeffs(n, &coeffs).expect("conductor is positive")
}

/// Dense `scale * sum_{x,y} z_N^{f(x,y)} x⊗y` over `group`.
pub(crate) fn dense_tensor(group: &Arc<FiniteGroup>, n: u32, scale: &BigRational, f: impl Fn(usize, usize) -> u32) -> Tensor2 {
    let table = root_table(n, scale);
    let order = group.order();
    let mut terms = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            terms.push(([x as u32, y as u32], table[f(x, y) as usize % n as usize].clone()));
        }
    }
    Tensor2::from_sorted_unchecked(Arc::clone(group), n, terms)
}

/// An isomorphism `B: H -> H*` with `B* = -B` on an odd abelian group, given
/// by its coordinate matrix; `H*` is identified with `H` through the
/// standard pairing.
#[derive(Clone, Debug)]
pub struct SymplecticStructure {
    abelian: AbelianGroup,
    group: Arc<FiniteGroup>,
    matrix: Vec<Vec<i64>>,
    /// `<x, y>` as an exponent of `z_N`, row-major over `|H|^2`.
    form: Vec<u32>,
}

impl SymplecticStructure {
    /// `group` must be abelian and of odd order.
    pub fn new(group: Arc<FiniteGroup>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let abelian = group.as_abelian().ok_or(Error::NonAbelian)?.clone();
        if !abelian.is_odd() {
            return Err(Error::EvenOrder(abelian.order()));
        }
        let hom = AbelianHom::new(abelian.clone(), abelian.character_group(), matrix.clone())
            .map_err(|e| Error::InvalidSymplectic(e.to_string()))?;
        if !hom.is_bijective() {
            return Err(Error::InvalidSymplectic("B is not an isomorphism".into()));
        }
        let n = abelian.order();
        let by = hom.table();
        let mut form = Vec::with_capacity(n * n);
        for x in 0..n {
            for &b in &by {
                form.push(abelian.pair(x, b));
            }
        }
        let exp = abelian.exponent();
        for x in 0..n {
            for y in 0..x {
                if (form[x * n + y] + form[y * n + x]) % exp != 0 {
                    return Err(Error::InvalidSymplectic(format!(
                        "form is not skew at ({}, {})",
                        abelian.label(x),
                        abelian.label(y)
                    )));
                }
            }
        }
        Ok(SymplecticStructure { abelian, group, matrix, form })
    }

    pub fn from_abelian(h: &AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(Arc::new(FiniteGroup::abelian(h)), matrix)
    }

    /// `B(a, b) = (b, -a)` on `K x K`, so `<(a,b),(c,d)> = (a,d) - (b,c)`.
    pub fn standard(k: &AbelianGroup) -> Result<Self> {
        if !k.is_odd() {
            return Err(Error::EvenOrder(k.order()));
        }
        let r = k.rank();
        let mut m = vec![vec![0i64; 2 * r]; 2 * r];
        for i in 0..r {
            m[i][r + i] = 1;
            m[r + i][i] = -1;
        }
        Self::from_abelian(&k.product(k), m)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn abelian(&self) -> &AbelianGroup {
        &self.abelian
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn conductor(&self) -> u32 {
        self.abelian.exponent()
    }

    #[inline]
    pub fn form(&self, x: usize, y: usize) -> u32 {
        self.form[x * self.abelian.order() + y]
    }

    fn normalized(&self, f: impl Fn(usize, usize) -> u32) -> Tensor2 {
        let scale = BigRational::new(1.into(), (self.abelian.order() as i64).into());
        dense_tensor(&self.group, self.conductor(), &scale, f)
    }

    /// `J_B = |H|^{-1} sum z^{<x,y>} x⊗y`.
    pub fn twist(&self) -> Tensor2 {
        self.normalized(|x, y| self.form(x, y))
    }

    /// Same sum with the exponent negated.
    pub fn twist_inverse(&self) -> Tensor2 {
        let n = self.conductor();
        self.normalized(|x, y| (n - self.form(x, y)) % n)
    }

    /// `J_B` with its closed-form inverse, checked by multiplication.
    pub fn invertible(&self) -> Result<Invertible2> {
        Invertible2::new(self.twist(), self.twist_inverse())
    }

    /// Closed form `R_B = |H|^{-1} sum z^{<x, y^{1/2}>} x⊗y`.
    pub fn r_matrix(&self) -> Tensor2 {
        let sq: Vec<usize> = (0..self.abelian.order()).map(|y| self.abelian.sqrt(y).unwrap()).collect();
        self.normalized(|x, y| self.form(x, sq[y]))
    }

    /// `J_{B'}` for `B' x = B x^{1/2}`, built from the matrix of `B'`
    /// (columns of `B` scaled by `(n_j + 1) / 2`).
    pub fn halved_twist(&self) -> Tensor2 {
        let h = &self.abelian;
        let m: Vec<Vec<i64>> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(h.factors()).map(|(&c, &n)| c * (n as i64 + 1) / 2).collect())
            .collect();
        let by = AbelianHom::new(h.clone(), h.character_group(), m).expect("scaled columns stay compatible").table();
        self.normalized(|x, y| h.pair(x, by[y]))
    }

    /// Whether an automorphism (as an image table) preserves `<,>`.
    pub fn preserves_form(&self, phi: &[u32]) -> bool {
        let n = self.abelian.order();
        (0..n).all(|x| (0..n).all(|y| self.form(phi[x] as usize, phi[y] as usize) == self.form(x, y)))
    }

    /// Whether `(phi⊗phi)(J_B) = J_B`.
    pub fn fixes_twist(&self, phi: &[u32]) -> bool {
        let table: Vec<usize> = phi.iter().map(|&x| x as usize).collect();
        let j = self.twist();
        j.push_forward(Arc::clone(&self.group), &table) == j
    }

    /// Checks `J_B^2 = J_{B'}` and `(J_B)_21 = J_B^{-1}`.
    pub fn square_identity_check(&self) -> Result<SquareReport> {
        let j = self.twist();
        let square = j.mul(&j)?.first_difference(&self.halved_twist());
        let flip = j.flip().first_difference(&self.twist_inverse());
        Ok(SquareReport { square, flip })
    }
}

/// First offending keys for the two identities, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub square: Option<[u32; 2]>,
    pub flip: Option<[u32; 2]>,
}

impl SquareReport {
    pub fn holds(&self) -> bool {
        self.square.is_none() && self.flip.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_of_unity;
    use crate::galg::{invert2, is_cocommutative, is_twist, twisted_r};

    fn std3() -> SymplecticStructure {
        SymplecticStructure::standard(&AbelianGroup::cyclic(3).unwrap()).unwrap()
    }

    #[test]
    fn standard_form_values() {
        let s = std3();
        let h = s.abelian().clone();
        let (e1, e2) = (h.index_of(&[1, 0]), h.index_of(&[0, 1]));
        assert_eq!(s.form(e1, e2), 1);
        assert_eq!(s.form(e2, e1), 2);
        assert!((0..9).all(|x| s.form(x, x) == 0));
    }

    #[test]
    fn rejects_bad_input() {
        let z2 = AbelianGroup::cyclic(2).unwrap();
        assert_eq!(SymplecticStructure::standard(&z2).unwrap_err(), Error::EvenOrder(2));
        let h = AbelianGroup::new(vec![3, 3]).unwrap();
        // symmetric, not skew
        assert!(SymplecticStructure::from_abelian(&h, vec![vec![0, 1], vec![1, 0]]).is_err());
        // skew but singular
        assert!(SymplecticStructure::from_abelian(&h, vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn z5_standard_is_invertible() {
        let s = SymplecticStructure::standard(&AbelianGroup::cyclic(5).unwrap()).unwrap();
        // det [[0,1],[-1,0]] = 1 mod 5
        assert_eq!(s.matrix(), &[vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn twist_coefficients() {
        let s = std3();
        let j = s.twist();
        let h = s.abelian();
        let ninth = BigRational::new(1.into(), 9.into());
        let k = [h.index_of(&[1, 0]) as u32, h.index_of(&[0, 1]) as u32];
        assert_eq!(j.coeff(k), root_of_unity(3, 1).scale(&ninth));
        for y in 0..9 {
            assert_eq!(j.coeff([0, y]), CycScalar::from_rational(3, ninth.clone()));
        }
        assert_eq!(j.len(), 81);
    }

    #[test]
    fn closed_forms_agree_with_generic_algebra() {
        let s = std3();
        let j = s.invertible().unwrap();
        assert_eq!(invert2(j.elem()).unwrap(), s.twist_inverse());
        assert!(is_twist(j.elem()).holds());
        assert_eq!(twisted_r(&j).unwrap(), s.r_matrix());
        assert!(s.square_identity_check().unwrap().holds());
        assert!(is_cocommutative(&j).unwrap());
        for x in 0..9u32 {
            assert_eq!(s.r_matrix().coeff([x, 0]), CycScalar::from_rational(3, BigRational::new(1.into(), 9.into())));
        }
    }

    #[test]
    fn automorphism_fixes_twist_iff_it_preserves_form() {
        let s = std3();
        let h = s.abelian().clone();
        let mats: [[[i64; 2]; 2]; 4] = [[[1, 1], [0, 1]], [[2, 0], [0, 2]], [[0, 1], [1, 0]], [[1, 0], [1, 1]]];
        for m in mats {
            let hom = AbelianHom::new(h.clone(), h.clone(), m.iter().map(|r| r.to_vec()).collect()).unwrap();
            let phi: Vec<u32> = hom.table().into_iter().map(|x| x as u32).collect();
            assert_eq!(s.preserves_form(&phi), s.fixes_twist(&phi), "{m:?}");
        }
        // determinant 1 preserves, determinant 2 = -1 does not
        let id_like: Vec<u32> = AbelianHom::new(h.clone(), h.clone(), vec![vec![1, 1], vec![0, 1]]).unwrap().table().into_iter().map(|x| x as u32).collect();
        assert!(s.preserves_form(&id_like));
        let swap: Vec<u32> = AbelianHom::new(h.clone(), h.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap().table().into_iter().map(|x| x as u32).collect();
        assert!(!s.preserves_form(&swap));
    }
}
