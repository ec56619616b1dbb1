//! Packed product kernel.
//!
//! Coefficients are cleared to `i64` numerators over one common denominator.
//! Products accumulate unreduced (length `2d - 1`) in `i128`, one dense slab per
//! value of the first output leg, and are reduced modulo `Phi_N` once per
//! cell. The slabs of different first legs are disjoint, so they are filled in
//! parallel. Anything that could overflow falls back to exact scalar
//! arithmetic.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::tensor::Tensor;
use crate::cyclo::{data, CycScalar};
use crate::grp::FiniteGroup;

const SLAB_LIMIT: usize = 1 << 24;
const PARALLEL_WORK: usize = 1 << 14;

struct Packed<const K: usize> {
    den: BigInt,
    keys: Vec<[u32; K]>,
    nums: Vec<i64>,
    max: u128,
}

fn pack<const K: usize>(t: &Tensor<K>, d: usize) -> Option<Packed<K>> {
    let den = t.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(&c.denominator()));
    let mut keys = Vec::with_capacity(t.len());
    let mut nums = Vec::with_capacity(t.len() * d);
    let mut max = 0u128;
    for (k, c) in t.iter() {
        keys.push(*k);
        for q in c.coeffs() {
            let n = (q.numer() * (&den / q.denom())).to_i64()?;
            max = max.max(n.unsigned_abs() as u128);
            nums.push(n);
        }
    }
    Some(Packed { den, keys, nums, max })
}

/// Result of a product: packed numerators over `den`, or an exact tensor when
/// the packed path was not safe.
pub(crate) enum Product<const K: usize> {
    Packed { den: BigInt, d: usize, keys: Vec<[u32; K]>, nums: Vec<i128> },
    Exact(Tensor<K>),
}

impl<const K: usize> Product<K> {
    pub(crate) fn into_tensor(self, group: &Arc<FiniteGroup>, conductor: u32) -> Tensor<K> {
        match self {
            Product::Exact(t) => t,
            Product::Packed { den, d, keys, nums } => {
                let terms = keys
                    .into_iter()
                    .zip(nums.chunks(d.max(1)))
                    .map(|(k, row)| {
                        let coeffs: Vec<BigRational> =
                            row.iter().map(|&x| BigRational::new(BigInt::from(x), den.clone())).collect();
                        (k, CycScalar::from_poly_coeffs(conductor, &coeffs).unwrap())
                    })
                    .collect();
                Tensor::from_sorted_unchecked(Arc::clone(group), conductor, terms)
            }
        }
    }
}

/// `a * b`; both operands must share group and conductor.
pub(crate) fn product<const K: usize>(a: &Tensor<K>, b: &Tensor<K>) -> Product<K> {
    let conductor = a.conductor();
    let field = data(conductor);
    let d = field.degree;
    let group = Arc::clone(a.group());
    if a.is_empty() || b.is_empty() {
        return Product::Exact(Tensor::zero(group, conductor));
    }
    let fallback = || Product::Exact(a.mul_naive(b).expect("operands already aligned"));
    let (Some(pa), Some(pb)) = (pack(a, d), pack(b, d)) else {
        return fallback();
    };
    let max_pow = field.powers.iter().flatten().map(|x| x.unsigned_abs() as u128).max().unwrap_or(1).max(1);
    let pairs = pa.keys.len().min(pb.keys.len()) as u128;
    let bound = pa
        .max
        .checked_mul(pb.max)
        .and_then(|x| x.checked_mul(d as u128))
        .and_then(|x| x.checked_mul(pairs))
        .and_then(|x| x.checked_mul((2 * d - 1) as u128))
        .and_then(|x| x.checked_mul(max_pow));
    if bound.is_none_or(|x| x >= 1u128 << 126) {
        return fallback();
    }
    let n = group.order();
    let cells = n.pow(K as u32 - 1);
    let width = 2 * d - 1;
    if cells.saturating_mul(width) > SLAB_LIMIT {
        return fallback();
    }

    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, k) in pb.keys.iter().enumerate() {
        by_first[k[0] as usize].push(j);
    }
    let nn = field.powers.len();

    let slab_for = |o: usize| -> (Vec<[u32; K]>, Vec<i128>) {
        let mut slab: Vec<i128> = Vec::new();
        for (i, ka) in pa.keys.iter().enumerate() {
            let b1 = group.mul(group.inv(ka[0] as usize), o);
            let bs = &by_first[b1];
            if bs.is_empty() {
                continue;
            }
            if slab.is_empty() {
                slab = vec![0i128; cells * width];
            }
            let an = &pa.nums[i * d..(i + 1) * d];
            for &j in bs {
                let kb = &pb.keys[j];
                let mut idx = 0usize;
                for l in 1..K {
                    idx = idx * n + group.mul(ka[l] as usize, kb[l] as usize);
                }
                let bn = &pb.nums[j * d..(j + 1) * d];
                let cell = &mut slab[idx * width..(idx + 1) * width];
                for (p, &x) in an.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (q, &y) in bn.iter().enumerate() {
                        cell[p + q] += x as i128 * y as i128;
                    }
                }
            }
        }
        let mut keys = Vec::new();
        let mut nums = Vec::new();
        if slab.is_empty() {
            return (keys, nums);
        }
        let mut reduced = vec![0i128; d];
        for idx in 0..cells {
            let cell = &slab[idx * width..(idx + 1) * width];
            if cell.iter().all(|&x| x == 0) {
                continue;
            }
            reduced.iter_mut().for_each(|r| *r = 0);
            for (k, &x) in cell.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (r, &c) in reduced.iter_mut().zip(&field.powers[k % nn]) {
                    *r += x * c as i128;
                }
            }
            if reduced.iter().all(|&x| x == 0) {
                continue;
            }
            let mut key = [0u32; K];
            key[0] = o as u32;
            let mut rest = idx;
            for l in (1..K).rev() {
                key[l] = (rest % n) as u32;
                rest /= n;
            }
            keys.push(key);
            nums.extend_from_slice(&reduced);
        }
        (keys, nums)
    };

    let work = pa.keys.len().saturating_mul(pb.keys.len());
    let parts: Vec<(Vec<[u32; K]>, Vec<i128>)> = if work >= PARALLEL_WORK {
        (0..n).into_par_iter().map(slab_for).collect()
    } else {
        (0..n).map(slab_for).collect()
    };
    let mut keys = Vec::new();
    let mut nums = Vec::new();
    for (k, v) in parts {
        keys.extend(k);
        nums.extend(v);
    }
    Product::Packed { den: &pa.den * &pb.den, d, keys, nums }
}

/// First key where `a * b` and `c * d` differ, comparing packed numerators
/// directly when both sides share a denominator.
pub(crate) fn products_differ<const K: usize>(
    a: &Tensor<K>,
    b: &Tensor<K>,
    c: &Tensor<K>,
    e: &Tensor<K>,
) -> Option<[u32; K]> {
    let group = Arc::clone(a.group());
    let conductor = a.conductor();
    let left = product(a, b);
    let right = product(c, e);
    match (left, right) {
        (
            Product::Packed { den: d1, d, keys: k1, nums: n1 },
            Product::Packed { den: d2, keys: k2, nums: n2, .. },
        ) if d1 == d2 => {
            let (mut i, mut j) = (0, 0);
            while i < k1.len() || j < k2.len() {
                match (k1.get(i), k2.get(j)) {
                    (Some(x), Some(y)) if x == y => {
                        if n1[i * d..(i + 1) * d] != n2[j * d..(j + 1) * d] {
                            return Some(*x);
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(x), Some(y)) => return Some(*x.min(y)),
                    (Some(x), None) => return Some(*x),
                    (None, Some(y)) => return Some(*y),
                    (None, None) => unreachable!(),
                }
            }
            None
        }
        (l, r) => {
            let l = l.into_tensor(&group, conductor);
            let r = r.into_tensor(&group, conductor);
            l.first_difference(&r)
        }
    }
}
