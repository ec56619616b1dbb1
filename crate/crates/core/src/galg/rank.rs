//! Exact rank over `Q(z_N)` by fraction-free elimination in `Z[z_N]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::tensor::Tensor2;
use crate::cyclo::{data, CycScalar, CycloData};

/// `a_{gh}` with rows and columns in canonical element order.
pub fn coefficient_matrix(r: &Tensor2) -> Vec<Vec<CycScalar>> {
    let n = r.group().order();
    let mut m = vec![vec![CycScalar::zero(r.conductor()); n]; n];
    for (&[g, h], c) in r.iter() {
        m[g as usize][h as usize] = c.clone();
    }
    m
}

/// Minimality certificate: the coefficient matrix has full rank `|G|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub rank: usize,
    pub order: usize,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.rank == self.order
    }
}

pub fn minimality(r: &Tensor2) -> MinimalityReport {
    MinimalityReport { rank: rank(&coefficient_matrix(r)), order: r.group().order() }
}

pub fn is_minimal(r: &Tensor2) -> bool {
    minimality(r).is_minimal()
}

type ZPoly = Vec<BigInt>;

fn zmul(a: &ZPoly, b: &ZPoly, f: &CycloData) -> ZPoly {
    let d = f.degree;
    let mut wide = vec![BigInt::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                wide[i + j] += x * y;
            }
        }
    }
    let n = f.powers.len();
    let mut out = vec![BigInt::zero(); d];
    for (k, c) in wide.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < d {
            out[k] += c;
            continue;
        }
        for (o, &p) in out.iter_mut().zip(&f.powers[k % n]) {
            if p != 0 {
                *o += &c * p;
            }
        }
    }
    out
}

fn is_zero(a: &ZPoly) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Exact quotient `x / p` in `Z[z]`, given `p^{-1} = q / den`.
fn exact_div(x: &ZPoly, q: &ZPoly, den: &BigInt, f: &CycloData) -> ZPoly {
    zmul(x, q, f)
        .into_iter()
        .map(|c| {
            let (quot, rem) = c.div_rem(den);
            assert!(rem.is_zero(), "fraction-free step produced a non-integral quotient");
            quot
        })
        .collect()
}

fn integer_parts(s: &CycScalar, scale: &BigInt) -> ZPoly {
    s.coeffs().iter().map(|c| c.numer() * (scale / c.denom())).collect()
}

/// Rank of a matrix of cyclotomic scalars sharing one conductor.
pub fn rank(m: &[Vec<CycScalar>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let conductor = m.iter().flatten().map(CycScalar::conductor).fold(1u32, |a, b| a.lcm(&b));
    let f = data(conductor);
    let lifted: Vec<Vec<CycScalar>> =
        m.iter().map(|row| row.iter().map(|s| s.embed(conductor).unwrap()).collect()).collect();
    let scale = lifted.iter().flatten().fold(BigInt::one(), |acc, s| acc.lcm(&s.denominator()));
    let mut a: Vec<Vec<ZPoly>> =
        lifted.iter().map(|row| row.iter().map(|s| integer_parts(s, &scale)).collect()).collect();

    let one: ZPoly = CycScalar::one(conductor).coeffs().iter().map(|c| c.to_integer()).collect();
    let mut prev_inv = (one, BigInt::one());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let (pivot_row, below) = a.split_at_mut(r + 1);
        let pivot_row = &pivot_row[r];
        let pv = &pivot_row[c];
        let (q, den) = (&prev_inv.0, &prev_inv.1);
        below.par_iter_mut().for_each(|row| {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut t = zmul(pv, &row[j], &f);
                if !is_zero(&lead) && !is_zero(&pivot_row[j]) {
                    let s = zmul(&lead, &pivot_row[j], &f);
                    for (x, y) in t.iter_mut().zip(s) {
                        *x -= y;
                    }
                }
                row[j] = exact_div(&t, q, den, &f);
            }
            row[c] = vec![BigInt::zero(); f.degree];
        });
        let pivot_scalar = CycScalar::from_poly_coeffs(
            conductor,
            &pv.iter().map(|x| num_rational::BigRational::from_integer(x.clone())).collect::<Vec<_>>(),
        )
        .unwrap();
        let inv = pivot_scalar.inv().expect("pivot is nonzero");
        let den = inv.denominator();
        prev_inv = (integer_parts(&inv, &den), den);
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_of_unity;

    /// Independent oracle: plain Gaussian elimination over the field.
    fn field_rank(m: &[Vec<CycScalar>]) -> usize {
        let mut a: Vec<Vec<CycScalar>> = m.to_vec();
        let (rows, cols) = (a.len(), a[0].len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].inv().unwrap();
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= &t;
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    fn lcg(seed: &mut u64) -> i64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 33) as i64
    }

    fn random_low_rank(n: usize, k: usize, cond: u32, seed: u64) -> Vec<Vec<CycScalar>> {
        let mut s = seed;
        let entry = |s: &mut u64| {
            let z = root_of_unity(cond, lcg(s));
            &z * &CycScalar::from_integer(cond, lcg(s) % 5 - 2)
        };
        let left: Vec<Vec<CycScalar>> = (0..n).map(|_| (0..k).map(|_| entry(&mut s)).collect()).collect();
        let right: Vec<Vec<CycScalar>> = (0..k).map(|_| (0..n).map(|_| entry(&mut s)).collect()).collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = CycScalar::zero(cond);
                        for t in 0..k {
                            acc += &(&left[i][t] * &right[t][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn fraction_free_matches_field_elimination() {
        for (n, k, cond, seed) in [(6, 3, 3, 1), (8, 8, 5, 2), (7, 2, 12, 3), (9, 5, 1, 4), (5, 4, 8, 5)] {
            let m = random_low_rank(n, k, cond, seed);
            assert_eq!(rank(&m), field_rank(&m), "n={n} k={k} N={cond}");
            assert!(rank(&m) <= k);
        }
    }

    #[test]
    fn skipped_pivot_columns() {
        // duplicated and zero columns force the elimination to skip columns
        let mut m = random_low_rank(8, 6, 3, 21);
        for row in m.iter_mut() {
            row[1] = row[0].clone();
            row[4] = CycScalar::zero(3);
            row[5] = &row[2] + &row[0];
        }
        assert_eq!(rank(&m), field_rank(&m));
    }

    #[test]
    fn fourier_matrix_full_rank() {
        let n = 7;
        let m: Vec<Vec<CycScalar>> =
            (0..n).map(|i| (0..n).map(|j| root_of_unity(n as u32, (i * j) as i64)).collect()).collect();
        assert_eq!(rank(&m), n);
    }

    #[test]
    fn rank_is_permutation_invariant() {
        let m = random_low_rank(7, 4, 3, 11);
        let perm = [3, 0, 6, 1, 5, 2, 4];
        let p: Vec<Vec<CycScalar>> =
            perm.iter().map(|&i| perm.iter().map(|&j| m[i][j].clone()).collect()).collect();
        assert_eq!(rank(&m), rank(&p));
    }
}
