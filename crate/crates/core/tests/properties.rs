use std::sync::Arc;

use proptest::prelude::*;
use twistlab_core::cyclo::{root_of_unity, CycScalar};
use twistlab_core::galg::{from_csv, is_triangular, is_twist, rank, to_csv, ExportMode, Tensor2};
use twistlab_core::grp::{dual_invariance_holds, AbelianGroup, FiniteGroup, GroupAction};
use twistlab_core::symp::SymplecticStructure;

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 8, 9, 12, 15];

fn scalar(n: u32, coeffs: &[i64]) -> CycScalar {
    let mut acc = CycScalar::zero(n);
    for (k, &c) in coeffs.iter().enumerate() {
        acc += &(&root_of_unity(n, k as i64) * &CycScalar::from_integer(n, c));
    }
    acc
}

fn arb_scalar(n: u32) -> impl Strategy<Value = CycScalar> {
    prop::collection::vec(-4i64..=4, n as usize).prop_map(move |c| scalar(n, &c))
}

fn arb_triple() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (arb_scalar(n), arb_scalar(n), arb_scalar(n)))
}

fn arb_odd_abelian() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(prop::sample::select(vec![3u32, 5, 7, 9]), 1..=3).prop_map(|f| AbelianGroup::new(f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_a_ring_map((a, b, _) in arb_triple(), k in 1u32..4) {
        let m = a.conductor() * k;
        let (ea, eb) = (a.embed(m).unwrap(), b.embed(m).unwrap());
        prop_assert_eq!((&a * &b).embed(m).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).embed(m).unwrap(), &ea + &eb);
    }

    #[test]
    fn scalar_text_round_trips((a, _, _) in arb_triple()) {
        let back: CycScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn square_root_halves(a in arb_odd_abelian(), seed in any::<u64>()) {
        let x = (seed % a.order() as u64) as usize;
        let r = a.sqrt(x).unwrap();
        prop_assert_eq!(a.add(r, r), x);
        prop_assert_eq!(a.sqrt(a.add(x, x)).unwrap(), x);
    }

    #[test]
    fn shear_actions_keep_the_pairing(p in prop::sample::select(vec![3u32, 5, 7]), k in 0i64..7) {
        // the generator of Z_p shears Z_p x Z_p, an automorphism of order dividing p
        let zp = Arc::new(FiniteGroup::abelian(&AbelianGroup::cyclic(p).unwrap()));
        let h = AbelianGroup::new(vec![p, p]).unwrap();
        let rho = GroupAction::from_matrices(zp, &h, vec![(1, vec![vec![1, k], vec![0, 1]])]).unwrap();
        let dual = rho.dual_action().unwrap();
        prop_assert!(dual_invariance_holds(&rho, &dual).unwrap());
    }

    #[test]
    fn rank_ignores_permutations(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 5), shift in 0usize..5) {
        let n = 3;
        let m: Vec<Vec<CycScalar>> =
            rows.iter().map(|r| r.iter().enumerate().map(|(j, &c)| &root_of_unity(n, j as i64) * &CycScalar::from_integer(n, c)).collect()).collect();
        let p: Vec<Vec<CycScalar>> = (0..5).map(|i| (0..5).map(|j| m[(i + shift) % 5][(j + 2 * shift) % 5].clone()).collect()).collect();
        let t: Vec<Vec<CycScalar>> = (0..5).map(|i| (0..5).map(|j| m[j][i].clone()).collect()).collect();
        prop_assert_eq!(rank(&m), rank(&p));
        prop_assert_eq!(rank(&m), rank(&t));
    }

    #[test]
    fn tensor_algebra(entries in prop::collection::vec((0u32..6, 0u32..6, -3i64..=3), 0..10),
                      others in prop::collection::vec((0u32..6, 0u32..6, -3i64..=3), 0..10)) {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let build = |es: &[(u32, u32, i64)]| {
            Tensor2::from_terms(Arc::clone(&g), 3, es.iter().map(|&(a, b, c)| ([a, b], root_of_unity(3, c)))).unwrap()
        };
        let (x, y) = (build(&entries), build(&others));
        let one = Tensor2::unit(Arc::clone(&g), 3);
        prop_assert_eq!(x.mul(&one).unwrap(), x.clone());
        prop_assert_eq!(x.flip().flip(), x.clone());
        // the flip is an algebra map
        prop_assert_eq!(x.mul(&y).unwrap().flip(), x.flip().mul(&y.flip()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), x.mul_naive(&y).unwrap());
        let csv = to_csv(&x, ExportMode::Exact).unwrap();
        prop_assert_eq!(from_csv(&csv, Arc::clone(&g)).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Any invertible skew matrix on `Z_p x Z_p` gives a triangular twist.
    #[test]
    fn skew_forms_give_triangular_twists(p in prop::sample::select(vec![3u32, 5, 7]), c in 1i64..7) {
        prop_assume!(c % p as i64 != 0);
        let h = AbelianGroup::new(vec![p, p]).unwrap();
        let s = SymplecticStructure::from_abelian(&h, vec![vec![0, c], vec![-c, 0]]).unwrap();
        prop_assert!(is_twist(&s.twist()).holds());
        prop_assert!(is_triangular(&s.r_matrix()));
    }
}
