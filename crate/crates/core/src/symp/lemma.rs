use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;

use super::structure::{from_exponent_counts, SymplecticStructure};
use crate::error::{Error, Result};
use crate::galg::Tensor2;
use crate::grp::{same_group, GroupAction};

fn check_inputs(k: &SymplecticStructure, h: &SymplecticStructure, rho: &GroupAction) -> Result<()> {
    if !same_group(rho.source(), k.group()) || !same_group(rho.target(), h.group()) {
        return Err(Error::GroupMismatch);
    }
    if let Some(g) = (0..k.group().order()).find(|&g| !h.preserves_form(rho.automorphism(g))) {
        return Err(Error::InvalidSymplectic(format!("rho({}) does not preserve the form", k.abelian().label(g))));
    }
    Ok(())
}

/// Collects `sum counts[key][e] z^e` into a tensor over `K`.
fn collect(k: &SymplecticStructure, n: u32, counts: Vec<i64>, scale: &BigRational) -> Tensor2 {
    let nk = k.group().order();
    let terms = counts
        .chunks(n as usize)
        .enumerate()
        .map(|(i, c)| ([(i / nk) as u32, (i % nk) as u32], from_exponent_counts(n, c, scale)))
        .collect();
    Tensor2::from_sorted_unchecked(Arc::clone(k.group()), n, terms)
}

/// The quadruple sum
/// `sum_{z,z',t,t'} e^{<z,t> + <z',t'> + <rho(z^{-1})x, rho(t^{-1})y^{1/2}>} zz'⊗tt'`,
/// evaluated term by term.
pub fn lemma32_literal(k: &SymplecticStructure, h: &SymplecticStructure, rho: &GroupAction, x: usize, y: usize) -> Result<Tensor2> {
    check_inputs(k, h, rho)?;
    let (ka, ha) = (k.abelian(), h.abelian());
    let n = ka.exponent().lcm(&ha.exponent());
    let (sk, sh) = (n / ka.exponent(), n / ha.exponent());
    let nk = ka.order();
    // group table lookups keep the inner loops allocation free
    let kg = k.group();
    let ys = ha.sqrt(y)?;
    let mut counts = vec![0i64; nk * nk * n as usize];
    for z in 0..nk {
        let zx = rho.apply(ka.neg(z), x);
        for t in 0..nk {
            let outer = k.form(z, t) * sk + h.form(zx, rho.apply(ka.neg(t), ys)) * sh;
            for zp in 0..nk {
                let u = kg.mul(z, zp);
                for tp in 0..nk {
                    let v = kg.mul(t, tp);
                    let e = (outer + k.form(zp, tp) * sk) % n;
                    counts[(u * nk + v) * n as usize + e as usize] += 1;
                }
            }
        }
    }
    Ok(collect(k, n, counts, &BigRational::from_integer(1.into())))
}

/// The closed form
/// `|K| sum_{u,v} e^{<u,v^{1/2}> + <rho(u^{-1/2})x, rho(v^{-1/2})y^{1/2}>} u⊗v`.
pub fn lemma32_closed(k: &SymplecticStructure, h: &SymplecticStructure, rho: &GroupAction, x: usize, y: usize) -> Result<Tensor2> {
    check_inputs(k, h, rho)?;
    let (ka, ha) = (k.abelian(), h.abelian());
    let n = ka.exponent().lcm(&ha.exponent());
    let (sk, sh) = (n / ka.exponent(), n / ha.exponent());
    let nk = ka.order();
    let ys = ha.sqrt(y)?;
    let mut counts = vec![0i64; nk * nk * n as usize];
    for u in 0..nk {
        let us = ka.sqrt(u)?;
        let ux = rho.apply(ka.neg(us), x);
        for v in 0..nk {
            let vs = ka.sqrt(v)?;
            let e = (k.form(u, vs) * sk + h.form(ux, rho.apply(ka.neg(vs), ys)) * sh) % n;
            counts[(u * nk + v) * n as usize + e as usize] += 1;
        }
    }
    Ok(collect(k, n, counts, &BigRational::from_integer((nk as i64).into())))
}

/// First key where the two sides differ, `None` when they agree.
pub fn lemma32_check(k: &SymplecticStructure, h: &SymplecticStructure, rho: &GroupAction, x: usize, y: usize) -> Result<Option<[u32; 2]>> {
    Ok(lemma32_literal(k, h, rho, x, y)?.first_difference(&lemma32_closed(k, h, rho, x, y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::AbelianGroup;

    fn std3() -> SymplecticStructure {
        SymplecticStructure::standard(&AbelianGroup::cyclic(3).unwrap()).unwrap()
    }

    #[test]
    fn trivial_action_origin() {
        let (k, h) = (std3(), std3());
        let rho = GroupAction::trivial(Arc::clone(k.group()), Arc::clone(h.group()));
        let lit = lemma32_literal(&k, &h, &rho, 0, 0).unwrap();
        // |K| R_B with R_B = |K|^{-1} sum e^{<u,v^{1/2}>}: integer coefficients
        let expected = k.r_matrix().scale_rational(&BigRational::from_integer(81.into()));
        assert_eq!(lit, expected);
        assert_eq!(lemma32_check(&k, &h, &rho, 0, 0).unwrap(), None);
    }

    #[test]
    fn rejects_form_breaking_action() {
        let k = std3();
        let h = SymplecticStructure::standard(&AbelianGroup::new(vec![3, 3]).unwrap()).unwrap();
        // a_1 -> a_1 + a_2 with the b-coordinates left alone: order 3, not symplectic
        let mut m = vec![vec![0i64; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let id = m.clone();
        m[0][1] = 1;
        let gens = vec![(k.abelian().basis(0), m), (k.abelian().basis(1), id)];
        let rho = GroupAction::from_matrices(Arc::clone(k.group()), h.abelian(), gens).unwrap();
        assert!(matches!(lemma32_check(&k, &h, &rho, 0, 0), Err(Error::InvalidSymplectic(_))));
    }
}
