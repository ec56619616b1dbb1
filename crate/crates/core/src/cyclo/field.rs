//! Per-conductor data: the cyclotomic polynomial and the reduced power basis
//! images of `x^k`, computed once and shared.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

use super::poly::CycPoly;
use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct CycloData {
    pub(crate) conductor: u32,
    /// `phi(N)`, the length of every reduced coefficient vector.
    pub(crate) degree: usize,
    pub(crate) phi: CycPoly,
    /// `powers[k]` is `x^k mod Phi_N` for `0 <= k < N`.
    pub(crate) powers: Vec<Vec<i64>>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=n).take_while(|i| i * i <= n).filter(|i| n % i == 0).collect();
    let upper: Vec<u32> = d.iter().rev().map(|i| n / i).filter(|&j| j * j != n).collect();
    d.extend(upper);
    d
}

pub(crate) fn data(n: u32) -> Arc<CycloData> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(d) = cache().read().unwrap().get(&n) {
        return Arc::clone(d);
    }
    // Computed outside the lock: recursion on divisors re-enters `data`.
    let built = Arc::new(build(n));
    let mut w = cache().write().unwrap();
    Arc::clone(w.entry(n).or_insert(built))
}

fn build(n: u32) -> CycloData {
    let mut phi = CycPoly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = phi.div_rem(&data(d).phi);
        debug_assert!(r.is_zero());
        phi = q;
    }
    let phi_int: Vec<i64> = phi
        .to_integers()
        .expect("cyclotomic polynomials have integer coefficients")
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
        .collect();
    let degree = phi_int.len() - 1;

    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    if degree > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x, then fold the x^degree term back using monicity
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..degree {
                cur[i] -= top * phi_int[i];
            }
        }
    }
    CycloData { conductor: n, degree, phi, powers }
}

/// The `n`-th cyclotomic polynomial, from `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: u32) -> Result<CycPoly> {
    if n == 0 {
        return Err(Error::InvalidConductor);
    }
    Ok(data(n).phi.clone())
}

/// Euler's totient, which is the degree of `Phi_n`.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), CycPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3).unwrap(), CycPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), CycPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(0), Err(Error::InvalidConductor));
    }

    #[test]
    fn power_table_wraps_to_one() {
        for n in 1..=30 {
            let d = data(n);
            assert_eq!(d.degree, totient(n));
            assert_eq!(d.powers.len(), n as usize);
            let mut one = vec![0; d.degree];
            one[0] = 1;
            assert_eq!(d.powers[0], one);
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(divisors(1), vec![1]);
    }
}
