//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use twistlab_core::coc::{ess_counterexample, invert_convention, search_cocycles, Cocycle};
use twistlab_core::cyclo::{cyclotomic_polynomial, root_of_unity, CycScalar};
use twistlab_core::dbl::{double_twist, example43_hierarchy_twist, example_4_3, prop41_check};
use twistlab_core::galg::{is_cocommutative, is_triangular, is_twist, minimality, rank, twisted_r};
use twistlab_core::grp::{is_solvable, AbelianGroup, FiniteGroup, GroupAction};
use twistlab_core::symp::{
    hierarchy_invertible, lemma32_check, theorem31_r, unipotent_action, SymplecticHierarchy, SymplecticStructure,
};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn abelian(factors: &[u32]) -> AbelianGroup {
    AbelianGroup::new(factors.to_vec()).unwrap()
}

/// The standard form on `K x K`.
fn standard(k: &[u32]) -> SymplecticStructure {
    SymplecticStructure::standard(&abelian(k)).unwrap()
}

fn within(elapsed: Duration, budget_s: u64) -> Result<(), String> {
    ensure(elapsed.as_secs() < budget_s, format!("took {:.1}s, budget {budget_s}s", elapsed.as_secs_f64()))
}

fn twist_axioms() -> Result<String, String> {
    let mut out = Vec::new();
    for (factors, budget) in [(&[3][..], 1), (&[5][..], 20)] {
        let s = standard(factors);
        let start = Instant::now();
        let rep = is_twist(&s.twist());
        within(start.elapsed(), budget)?;
        ensure(rep.holds(), format!("J_B on {:?}: {rep}", factors))?;
        out.push(format!("order {} ok", s.group().order()));
    }
    Ok(out.join(", "))
}

fn r_closed_form() -> Result<String, String> {
    let start = Instant::now();
    let mut out = Vec::new();
    for (factors, n) in [(&[3][..], 9), (&[5][..], 25)] {
        let s = standard(factors);
        let r = s.r_matrix();
        let brute = twisted_r(&s.invertible().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(r == brute, format!("closed-form R differs from J21^-1 J on order {n}"))?;
        ensure(is_triangular(&r), "not triangular")?;
        let m = minimality(&r);
        ensure(m.rank == n, format!("rank {} instead of {n}", m.rank))?;
        out.push(format!("rank {n}"));
    }
    within(start.elapsed(), 30)?;
    Ok(out.join(", "))
}

fn quadruple_sum() -> Result<String, String> {
    let start = Instant::now();
    let s = standard(&[3]);
    let trivial = GroupAction::trivial(Arc::clone(s.group()), Arc::clone(s.group()));
    let shear = unipotent_action(&s, &s).map_err(|e| e.to_string())?;
    ensure(!shear.is_trivial(), "shear action is trivial")?;
    for (name, rho) in [("trivial", &trivial), ("shear", &shear)] {
        for x in 0..9 {
            for y in 0..9 {
                if let Some(k) = lemma32_check(&s, &s, rho, x, y).map_err(|e| e.to_string())? {
                    return Err(format!("{name} action, x = {x}, y = {y}: differs at {k:?}"));
                }
            }
        }
    }
    within(start.elapsed(), 120)?;
    Ok("81 pairs under the trivial and the shear action".into())
}

fn hierarchy81() -> SymplecticHierarchy {
    let (b1, b2) = (standard(&[3]), standard(&[3]));
    let shear = unipotent_action(&b1, &b2).unwrap();
    SymplecticHierarchy::new(b1, vec![(b2, shear)]).unwrap()
}

fn hierarchy_r() -> Result<String, String> {
    let start = Instant::now();
    let h = hierarchy81();
    ensure(h.group().order() == 81 && !h.group().is_abelian(), "expected a nonabelian group of order 81")?;
    let twist = hierarchy_invertible(&h).map_err(|e| e.to_string())?;
    ensure(is_twist(twist.elem()).holds(), "hierarchy twist fails the twist equation")?;
    let r = theorem31_r(&h).map_err(|e| e.to_string())?;
    ensure(r == twisted_r(&twist).map_err(|e| e.to_string())?, "closed form differs from J21^-1 J")?;
    ensure(is_triangular(&r), "not triangular")?;
    let m = minimality(&r);
    ensure(m.rank == 81, format!("rank {}", m.rank))?;
    within(start.elapsed(), 300)?;
    Ok("equal, triangular, rank 81".into())
}

fn double_inverse() -> Result<String, String> {
    let start = Instant::now();
    let d = example_4_3().map_err(|e| e.to_string())?;
    let rep = prop41_check(&d).map_err(|e| e.to_string())?;
    ensure(rep.left_unit && rep.right_unit, "closed-form inverse is not two-sided")?;
    ensure(rep.contraction_failures.is_empty(), format!("contractions fail for {:?}", rep.contraction_failures))?;
    ensure(d.abelian().order() == 6, "expected 6 characters")?;
    within(start.elapsed(), 5)?;
    Ok("two-sided inverse, 6 contractions".into())
}

fn double_r() -> Result<String, String> {
    let start = Instant::now();
    let d = example_4_3().map_err(|e| e.to_string())?;
    ensure(d.group().order() == 36, "double is not of order 36")?;
    let j = double_twist(&d).map_err(|e| e.to_string())?;
    let r = d.r_matrix();
    ensure(r == twisted_r(&j).map_err(|e| e.to_string())?, "closed form differs from J21^-1 J")?;
    ensure(is_triangular(&r), "not triangular")?;
    let m = minimality(&r);
    ensure(m.rank == 36, format!("rank {}", m.rank))?;
    ensure(!is_cocommutative(&j).map_err(|e| e.to_string())?, "twisted coproduct is cocommutative")?;
    within(start.elapsed(), 30)?;
    Ok("equal, triangular, rank 36, not cocommutative".into())
}

fn two_paths_agree() -> Result<String, String> {
    let start = Instant::now();
    let d = example_4_3().map_err(|e| e.to_string())?;
    let via_hierarchy = example43_hierarchy_twist(&d).map_err(|e| e.to_string())?;
    let via_double = d.twist();
    if let Some(k) = via_double.first_difference(&via_hierarchy) {
        return Err(format!("paths differ at {k:?}"));
    }
    within(start.elapsed(), 10)?;
    Ok(format!("{} coefficients agree", via_double.len()))
}

fn convention_bridge() -> Result<String, String> {
    let start = Instant::now();
    let d = example_4_3().map_err(|e| e.to_string())?;
    let c = d.base();
    let sigma = invert_convention(c.group(), c.table());
    if let Some(p) = ess_counterexample(c.action(), &sigma) {
        return Err(format!("inverted table fails at {p:?}"));
    }
    // the untransformed table is not a solution of the other equation
    ensure(ess_counterexample(c.action(), c.table()).is_some(), "raw table already satisfies both conventions")?;
    within(start.elapsed(), 1)?;
    Ok("36 pairs".into())
}

fn z(factors: &[u32]) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::abelian(&abelian(factors)))
}

/// Actions from the shipped examples and the small groups around them.
fn fixture_actions() -> Vec<(&'static str, GroupAction)> {
    let negate = GroupAction::from_matrices(z(&[2]), &abelian(&[3]), vec![(1, vec![vec![-1]])]).unwrap();
    let s = standard(&[3]);
    let shear = unipotent_action(&s, &s).unwrap();
    let d = example_4_3().unwrap();
    vec![
        ("sign action of S3", d.base().action().clone()),
        ("trivial Z3 on Z3", GroupAction::trivial(z(&[3]), z(&[3]))),
        ("trivial Z2xZ2", GroupAction::trivial(z(&[2, 2]), z(&[2, 2]))),
        ("trivial Z3xZ3", GroupAction::trivial(z(&[3, 3]), z(&[3, 3]))),
        ("negation of Z3 by Z2", negate),
        ("shear on Z3xZ3", shear),
        ("double of the S3 cocycle", d.cocycle().action().clone()),
    ]
}

fn solvability() -> Result<String, String> {
    let start = Instant::now();
    let mut found = 0;
    for (name, rho) in fixture_actions() {
        let cocycles: Vec<Cocycle> = search_cocycles(&rho).map_err(|e| format!("{name}: {e}"))?;
        for c in &cocycles {
            ensure(is_solvable(c.group()), format!("{name}: nonsolvable group carries a cocycle"))?;
        }
        found += cocycles.len();
    }
    ensure(found > 0, "no cocycles found at all")?;
    within(start.elapsed(), 60)?;
    Ok(format!("{found} cocycles over {} actions, all on solvable groups", fixture_actions().len()))
}

/// Integer cyclotomic polynomials by dividing `x^n - 1` by `Phi_d`, `d | n`.
fn phi_oracle(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let q = phi_oracle(d);
        // exact monic long division
        let mut rem = p.clone();
        let mut quot = vec![0i64; rem.len() - q.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + q.len() - 1];
            quot[i] = c;
            for (j, &qj) in q.iter().enumerate() {
                rem[i + j] -= c * qj;
            }
        }
        assert!(rem.iter().all(|&r| r == 0));
        p = quot;
    }
    p
}

fn lcg(seed: &mut u64) -> i64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (*seed >> 40) as i64 % 7 - 3
}

fn random_scalar(n: u32, seed: &mut u64) -> CycScalar {
    let mut acc = CycScalar::zero(n);
    for k in 0..n as i64 {
        acc += &(&root_of_unity(n, k) * &CycScalar::from_integer(n, lcg(seed)));
    }
    acc
}

fn scalar_kernel() -> Result<String, String> {
    let start = Instant::now();
    for n in 1..=24u32 {
        let ours = cyclotomic_polynomial(n).map_err(|e| e.to_string())?.to_integers().ok_or("non-integral Phi")?;
        let ours: Vec<i64> = ours.iter().map(|c| i64::try_from(c).unwrap()).collect();
        ensure(ours == phi_oracle(n as usize), format!("Phi_{n} disagrees"))?;
    }
    let mut seed = 7;
    for n in [1u32, 3, 4, 5, 6, 12, 15] {
        for _ in 0..12 {
            let (a, b, c) = (random_scalar(n, &mut seed), random_scalar(n, &mut seed), random_scalar(n, &mut seed));
            ensure((&a + &b) == (&b + &a) && (&a * &b) == (&b * &a), "commutativity")?;
            ensure(&(&a * &b) * &c == &a * &(&b * &c), "associativity")?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
            ensure((&a - &a).is_zero() && (&a * &CycScalar::one(n)) == a, "identities")?;
            if !a.is_zero() {
                ensure((&a * &a.inv().map_err(|e| e.to_string())?).is_one(), "inverse")?;
            }
        }
        ensure(root_of_unity(n, n as i64).is_one() && root_of_unity(n, 1).pow(n).is_one(), format!("z_{n}^{n} != 1"))?;
    }
    let groups: [&[u32]; 7] = [&[3], &[2, 2], &[2, 3], &[3, 3], &[5, 5], &[2, 2, 3, 3], &[3, 3, 3, 3]];
    for f in groups {
        let a = abelian(f);
        let e = a.exponent();
        let m: Vec<Vec<CycScalar>> =
            (0..a.order()).map(|x| (0..a.order()).map(|chi| root_of_unity(e, a.pair(x, chi) as i64)).collect()).collect();
        ensure(rank(&m) == a.order(), format!("pairing matrix of {a} is singular"))?;
    }
    within(start.elapsed(), 10)?;
    Ok("field axioms, Phi_N for N <= 24, 7 pairing matrices".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("twist axioms for J_B on Z3xZ3 and Z5xZ5", twist_axioms),
        ("closed-form R_B, triangular and minimal", r_closed_form),
        ("quadruple sum equals its closed form", quadruple_sum),
        ("hierarchy R-matrix on the order-81 group", hierarchy_r),
        ("closed-form inverse of the double twist", double_inverse),
        ("R-matrix of the order-36 double", double_r),
        ("double path and hierarchy path give one twist", two_paths_agree),
        ("g -> g^-1 convention bridge", convention_bridge),
        ("groups carrying cocycles are solvable", solvability),
        ("cyclotomic kernel and Fourier nondegeneracy", scalar_kernel),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
