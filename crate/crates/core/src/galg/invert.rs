use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::tensor::Tensor2;
use crate::cyclo::CycScalar;
use crate::error::{Error, Result};
use crate::grp::AbelianGroup;

/// Largest `|G|^2` handled by the dense solve.
pub const GENERIC_INVERSION_LIMIT: usize = 4096;

/// An element of `C[G]⊗C[G]` together with a two-sided inverse that has been
/// checked by multiplication.
#[derive(Clone, Debug)]
pub struct Invertible2 {
    elem: Tensor2,
    inv: Tensor2,
}

impl Invertible2 {
    /// Accepts a caller-supplied inverse after checking both products.
    pub fn new(elem: Tensor2, inv: Tensor2) -> Result<Self> {
        if !elem.mul(&inv)?.is_unit() || !inv.mul(&elem)?.is_unit() {
            return Err(Error::Postcondition("supplied inverse does not multiply to 1⊗1".into()));
        }
        Ok(Invertible2 { elem, inv })
    }

    /// Inverse from [`invert2`].
    pub fn generic(elem: Tensor2) -> Result<Self> {
        let inv = invert2(&elem)?;
        Ok(Invertible2 { elem, inv })
    }

    pub fn elem(&self) -> &Tensor2 {
        &self.elem
    }

    pub fn inv(&self) -> &Tensor2 {
        &self.inv
    }

    /// Flipping both legs preserves inverses.
    pub fn flip(&self) -> Invertible2 {
        Invertible2 { elem: self.elem.flip(), inv: self.inv.flip() }
    }

    /// `(a b)^{-1} = b^{-1} a^{-1}`.
    pub fn compose(&self, other: &Invertible2) -> Result<Invertible2> {
        Ok(Invertible2 { elem: self.elem.mul(&other.elem)?, inv: other.inv.mul(&self.inv)? })
    }
}

/// Generic two-sided inverse in `C[G]⊗C[G]`.
///
/// Abelian groups go through the Fourier transform on `G×G`, where the algebra
/// is diagonal; other groups use a dense exact solve, limited to
/// `|G|^2 <= 4096`. The result is checked on both sides before it is returned.
pub fn invert2(a: &Tensor2) -> Result<Tensor2> {
    let g = a.group();
    let inv = if let Some(ab) = g.as_abelian() {
        fourier_inverse(a, ab)?
    } else {
        let m = g.order() * g.order();
        if m > GENERIC_INVERSION_LIMIT {
            return Err(Error::InversionLimit(g.order()));
        }
        dense_inverse(a)?
    };
    if !a.mul(&inv)?.is_unit() || !inv.mul(a)?.is_unit() {
        return Err(Error::Postcondition("computed inverse failed the multiplication check".into()));
    }
    Ok(inv)
}

/// Transforms a dense array over `Z_{n_1} x ... x Z_{n_k}` along every axis,
/// in place, with kernel `z_M^{sign * c m M / n_i}`.
fn dft(values: &mut [CycScalar], factors: &[u32], m: u32, sign: i64) {
    let total = values.len();
    let mut stride = total;
    for &n in factors {
        let n = n as usize;
        stride /= n;
        let step = (m as usize / n) as i64;
        let mut out = vec![CycScalar::zero(m); total];
        for base in 0..total {
            if (base / stride) % n != 0 {
                continue;
            }
            for freq in 0..n {
                let mut acc = CycScalar::zero(m);
                for c in 0..n {
                    let v = &values[base + c * stride];
                    if !v.is_zero() {
                        acc += &v.mul_root(sign * step * (c * freq) as i64);
                    }
                }
                out[base + freq * stride] = acc;
            }
        }
        values.clone_from_slice(&out);
    }
}

fn fourier_inverse(a: &Tensor2, ab: &AbelianGroup) -> Result<Tensor2> {
    let n = ab.order();
    let both = ab.product(ab);
    let m = a.conductor().lcm(&both.exponent());
    let a = a.with_conductor(m)?;
    let mut values = vec![CycScalar::zero(m); n * n];
    for (&[x, y], c) in a.iter() {
        values[x as usize * n + y as usize] = c.clone();
    }
    dft(&mut values, both.factors(), m, 1);
    for v in values.iter_mut() {
        *v = v.inv().map_err(|_| Error::Singular)?;
    }
    dft(&mut values, both.factors(), m, -1);
    let norm = BigRational::new(BigInt::from(1), BigInt::from(n * n));
    let terms = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| ([(i / n) as u32, (i % n) as u32], v.scale(&norm)));
    Tensor2::from_terms(Arc::clone(a.group()), m, terms)
}

fn dense_inverse(a: &Tensor2) -> Result<Tensor2> {
    let g = a.group();
    let n = g.order();
    let dim = n * n;
    let cond = a.conductor();
    // column j of L is a * e_j, with e_j = g_j ⊗ h_j in lexicographic order
    let mut mat = vec![vec![CycScalar::zero(cond); dim + 1]; dim];
    for j in 0..dim {
        let (gj, hj) = (j / n, j % n);
        for (&[p, q], c) in a.iter() {
            let row = g.mul(p as usize, gj) * n + g.mul(q as usize, hj);
            mat[row][j] += c;
        }
    }
    mat[0][dim] = CycScalar::one(cond);
    let x = solve(mat)?;
    let terms = x.into_iter().enumerate().map(|(i, v)| ([(i / n) as u32, (i % n) as u32], v));
    Tensor2::from_terms(Arc::clone(g), cond, terms)
}

/// Gauss-Jordan on an augmented square system; the matrix must be regular.
fn solve(mut mat: Vec<Vec<CycScalar>>) -> Result<Vec<CycScalar>> {
    let dim = mat.len();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !mat[r][col].is_zero()).ok_or(Error::Singular)?;
        mat.swap(col, pivot);
        let inv = mat[col][col].inv()?;
        let prow: Vec<CycScalar> = mat[col].iter().map(|v| v * &inv).collect();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&prow).skip(col) {
                if !p.is_zero() {
                    *v -= &(&f * p);
                }
            }
        }
        mat[col] = prow;
    }
    Ok(mat.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
