//! Named checks and the verification report.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use twistlab_core::coc::{ess_counterexample, invert_convention, pullback_twist, verify_cocycle, Cocycle};
use twistlab_core::dbl::{double_twist, fourier_invariance_failure, fourier_twist, prop41_check, DoubleData};
use twistlab_core::galg::{cocommutativity_failure, is_triangular, is_twist, minimality, twisted_r, Invertible2, Tensor2};
use twistlab_core::grp::{is_solvable, GroupAction};
use twistlab_core::symp::{
    hierarchy_invertible, hierarchy_twist, lemma32_check, theorem31_check, theorem31_r, SymplecticHierarchy,
    SymplecticStructure,
};
use twistlab_core::Result as CoreResult;

use crate::spec::Object;

/// Every check in report order, with the identity it tests.
pub const CHECKS: [(&str, &str); 13] = [
    ("cocycle", "1-cocycle equation and bijectivity"),
    ("convention", "g -> g^-1 turns the cocycle into the other convention"),
    ("twist", "twist equation, counit and invertibility"),
    ("triangular", "R21 R = 1 for the closed-form R"),
    ("minimal", "closed-form R has full rank"),
    ("rmatrix", "closed-form R equals J21^-1 J"),
    ("squares", "J^2 = J_B' and J21 = J^-1"),
    ("lemma32", "quadruple sum equals its closed form"),
    ("theorem31", "hierarchy R-matrix closed form, triangular, minimal"),
    ("prop41", "closed-form inverse of the double twist and its contractions"),
    ("pullback", "pullback of the product twist along the cocycle"),
    ("noncocomm", "twisted coproduct is not cocommutative"),
    ("solvable", "derived series reaches the trivial group"),
];

pub fn anchor(check: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(n, _)| *n == check).map(|(_, a)| *a)
}

/// Checks that make sense for an object.
pub fn applicable(obj: &Object) -> &'static [&'static str] {
    match obj {
        Object::Abelian(..) | Object::Group(_) | Object::Action(_) => &["solvable"],
        Object::Cocycle(_) => &["cocycle", "convention", "solvable"],
        Object::Symplectic(_) => {
            // the group is abelian, so a twisted coproduct stays cocommutative
            &["twist", "triangular", "minimal", "rmatrix", "squares", "lemma32", "theorem31", "solvable"]
        }
        Object::Hierarchy(_) => &[
            "cocycle", "twist", "triangular", "minimal", "rmatrix", "squares", "lemma32", "theorem31", "pullback",
            "noncocomm", "solvable",
        ],
        Object::Double(_) => &[
            "cocycle", "convention", "twist", "triangular", "minimal", "rmatrix", "prop41", "pullback", "noncocomm",
            "solvable",
        ],
    }
}

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<10} [{}] {}", self.name, self.anchor, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub object: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn render(&self, timing: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            if timing {
                out.push_str(&format!(" ({:.3}s)", r.elapsed.as_secs_f64()));
            }
            out.push('\n');
        }
        let failed = self.records.iter().filter(|r| !r.passed).count();
        out.push_str(&format!("{}: {} checks, {} failed\n", self.object, self.records.len(), failed));
        out
    }
}

type Outcome = (bool, String);

/// Runs the requested checks (all applicable ones when `requested` is empty)
/// and reports them in canonical order.
pub fn verify(name: &str, obj: &Object, requested: &[String]) -> std::result::Result<Report, String> {
    let allowed = applicable(obj);
    let wanted: Vec<&'static str> = if requested.is_empty() {
        allowed.to_vec()
    } else {
        for r in requested {
            if anchor(r).is_none() {
                return Err(format!("unknown check `{r}`"));
            }
            if !allowed.contains(&r.as_str()) {
                return Err(format!("check `{r}` does not apply to a {}", obj.kind()));
            }
        }
        CHECKS.iter().map(|(n, _)| *n).filter(|n| requested.iter().any(|r| r == n)).collect()
    };
    let records = wanted
        .par_iter()
        .map(|&check| {
            let start = Instant::now();
            let (passed, detail) = match run(obj, check) {
                Ok(o) => o,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckRecord { name: check, anchor: anchor(check).unwrap(), passed, detail, elapsed: start.elapsed() }
        })
        .collect();
    Ok(Report { object: name.to_string(), records })
}

fn run(obj: &Object, check: &str) -> CoreResult<Outcome> {
    if check == "solvable" {
        let g = obj.group();
        let ok = is_solvable(&g);
        let name = match obj {
            Object::Abelian(a, _) => a.to_string(),
            _ => g.describe(),
        };
        return Ok((ok, format!("{name} of order {}", g.order())));
    }
    match obj {
        Object::Cocycle(c) => cocycle_check(c, check),
        Object::Symplectic(s) => symplectic_check(s, check),
        Object::Hierarchy(h) => hierarchy_check(h, check),
        Object::Double(d) => double_check_named(d, check),
        _ => unreachable!("filtered by applicable()"),
    }
}

fn cocycle_check(c: &Cocycle, check: &str) -> CoreResult<Outcome> {
    match check {
        "cocycle" => {
            let rep = verify_cocycle(c.action(), c.table());
            Ok(match rep.counterexample {
                Some((x, y)) => (false, format!("fails at ({}, {})", c.group().label(x), c.group().label(y))),
                None => (rep.bijective, format!("holds on all {} pairs, bijective: {}", c.group().order().pow(2), rep.bijective)),
            })
        }
        "convention" => {
            let sigma = invert_convention(c.group(), c.table());
            Ok(match ess_counterexample(c.action(), &sigma) {
                None => (true, "inverted table satisfies pi(gg') = pi(g') (g'^-1 pi(g))".into()),
                Some((x, y)) => (false, format!("inverted table fails at ({}, {})", c.group().label(x), c.group().label(y))),
            })
        }
        _ => unreachable!(),
    }
}

fn key(t: &Tensor2, k: [u32; 2]) -> String {
    format!("({}, {})", t.group().label(k[0] as usize), t.group().label(k[1] as usize))
}

fn twist_outcome(j: &Tensor2, inv: CoreResult<Invertible2>) -> Outcome {
    let rep = is_twist(j);
    match inv {
        Ok(_) => (rep.holds(), format!("{rep}; closed-form inverse verified")),
        Err(e) => (false, format!("{rep}; inverse: {e}")),
    }
}

fn r_outcomes(check: &str, closed: &Tensor2, inv: &Invertible2) -> CoreResult<Outcome> {
    Ok(match check {
        "triangular" => (is_triangular(closed), format!("{} terms", closed.len())),
        "minimal" => {
            let m = minimality(closed);
            (m.is_minimal(), format!("rank {} of {}", m.rank, m.order))
        }
        "rmatrix" => match closed.first_difference(&twisted_r(inv)?) {
            None => (true, format!("equal on all {} terms", closed.len())),
            Some(k) => (false, format!("differs at {}", key(closed, k))),
        },
        "noncocomm" => match cocommutativity_failure(inv)? {
            Some(g) => (true, format!("witness {}", closed.group().label(g))),
            None => (false, "twisted coproduct is cocommutative".into()),
        },
        _ => unreachable!(),
    })
}

fn lemma_grid(k: &SymplecticStructure, h: &SymplecticStructure, rho: &GroupAction) -> CoreResult<Outcome> {
    let n = h.group().order();
    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lemma32_check(k, h, rho, x, y)?.is_some() {
                bad.push((x, y));
            }
        }
    }
    Ok(match bad.first() {
        None => (true, format!("equal for all {} pairs (x, y)", n * n)),
        Some(&(x, y)) => (false, format!("{} pairs differ, first at x = {}, y = {}", bad.len(), h.abelian().label(x), h.abelian().label(y))),
    })
}

fn symplectic_check(s: &SymplecticStructure, check: &str) -> CoreResult<Outcome> {
    match check {
        "twist" => Ok(twist_outcome(&s.twist(), s.invertible())),
        "squares" => {
            let rep = s.square_identity_check()?;
            Ok((rep.holds(), format!("square: {}, flip: {}", ok(rep.square.is_none()), ok(rep.flip.is_none()))))
        }
        "lemma32" => lemma_grid(s, s, &GroupAction::trivial(s.group().clone(), s.group().clone())),
        "theorem31" => hierarchy_check(&SymplecticHierarchy::new(s.clone(), vec![])?, "theorem31"),
        _ => r_outcomes(check, &s.r_matrix(), &s.invertible()?),
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILS"
    }
}

fn hierarchy_check(h: &SymplecticHierarchy, check: &str) -> CoreResult<Outcome> {
    match check {
        "cocycle" => {
            let c = h.hierarchy().cocycle()?;
            Ok((true, format!("normal-form map onto {} verified", c.coefficients().describe())))
        }
        "twist" => {
            let ht = hierarchy_twist(h)?;
            Ok((ht.report.holds(), format!("{}; closed-form inverse verified", ht.report)))
        }
        "squares" => {
            let mut parts = Vec::new();
            let mut all = true;
            for i in 1..=h.len() {
                let rep = h.level(i).square_identity_check()?;
                all &= rep.holds();
                parts.push(format!("level {i} {}", ok(rep.holds())));
            }
            Ok((all, parts.join(", ")))
        }
        "lemma32" => {
            if h.len() < 2 {
                return Ok((true, "length 1, nothing to check".into()));
            }
            lemma_grid(h.level(1), h.level(2), h.hierarchy().action(2))
        }
        "theorem31" => {
            let rep = theorem31_check(h)?;
            let diff = match rep.difference {
                None => "closed form equals J21^-1 J".to_string(),
                Some(k) => format!("closed form differs at {k:?}"),
            };
            Ok((rep.holds(), format!("{diff}; triangular: {}; rank {} of {}", ok(rep.triangular), rep.minimality.rank, rep.minimality.order)))
        }
        "pullback" => {
            let inv = hierarchy_invertible(h)?;
            let c = h.hierarchy().cocycle()?;
            let p = pullback_twist(&c, &h.product_twist(), Some(inv.inv()))?;
            let same = p.tensor == *inv.elem();
            Ok((same && p.is_twist(), format!("equals J_n...J_1: {}; {}", ok(same), p.report)))
        }
        _ => r_outcomes(check, &theorem31_r(h)?, &hierarchy_invertible(h)?),
    }
}

fn double_check_named(d: &DoubleData, check: &str) -> CoreResult<Outcome> {
    match check {
        "cocycle" => {
            let base = verify_cocycle(d.base().action(), d.base().table());
            let tilde = verify_cocycle(d.cocycle().action(), d.cocycle().table());
            Ok((base.holds() && tilde.holds(), format!("base {}, double {}", ok(base.holds()), ok(tilde.holds()))))
        }
        "convention" => cocycle_check(d.base(), "convention"),
        "twist" => Ok(twist_outcome(&d.twist(), double_twist(d))),
        "prop41" => {
            let rep = prop41_check(d)?;
            Ok((
                rep.holds(),
                format!(
                    "left {}, right {}, contractions failing for {} of {} characters",
                    ok(rep.left_unit),
                    ok(rep.right_unit),
                    rep.contraction_failures.len(),
                    d.abelian().order()
                ),
            ))
        }
        "pullback" => {
            if let Some(g) = fourier_invariance_failure(d) {
                return Ok((false, format!("Fourier twist moved by {}", d.group().label(g))));
            }
            let p = pullback_twist(d.cocycle(), &fourier_twist(d.abelian()), Some(&d.twist_inverse()))?;
            let same = p.tensor == d.twist();
            Ok((same && p.is_twist(), format!("equals the double twist: {}; {}", ok(same), p.report)))
        }
        _ => r_outcomes(check, &d.r_matrix(), &double_twist(d)?),
    }
}
