//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hecke_cli::{kl_table, pgl2_table, run_suite, Suite, SuiteOptions};
use hecke_core::coxeter::CoxeterType;
use hecke_core::grfunctor::{p_matrix_at_one, GrFunctor};
use hecke_core::laurent::SpecializeMode;
use hecke_core::pgl2ring::{self, StratumClass};

fn ty(s: &str) -> CoxeterType {
    s.parse().expect("valid type")
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(suite: Suite, types: &[&str], opts: &SuiteOptions) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for t in types {
        match run_suite(suite, Some(ty(t)), opts) {
            Ok(r) => {
                ok &= r.passed();
                parts.push(format!("{t}:{}/{}", r.instances - r.failures.len(), r.instances));
                if let Some(w) = r.failures.first() {
                    parts.push(format!("first failure {}: {} != {}", w.input, w.lhs, w.rhs));
                }
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{t}: {e}"));
            }
        }
    }
    Outcome { ok, detail: parts.join(" ") }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    out.ok &= took < limit;
    out.detail = format!("{} ({:.2}s, limit {}s)", out.detail, took.as_secs_f64(), limit.as_secs());
    out
}

const ALL_TYPES: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "G2", "I2:4", "I2:5", "I2:6"];
const SMALL_TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "G2", "I2:4", "I2:5", "I2:6"];
const CENTRE_TYPES: [&str; 4] = ["A2", "A3", "I2:4", "I2:6"];

fn triangularity() -> Outcome {
    let all = StratumClass::all(12).expect("even order");
    let bad: Vec<String> = all.iter().filter(|&&x| !pgl2ring::is_triangular(x)).map(|x| x.to_string()).collect();
    Outcome { ok: bad.is_empty(), detail: format!("{} sheaves, non-triangular: {bad:?}", all.len()) }
}

/// Single-coordinate inputs against an explicit inverse of `P(1)`.
fn minimal_support(t: &str) -> Outcome {
    let kl = kl_table(ty(t)).expect("supported");
    let g = kl.group().clone();
    let f = GrFunctor::new(kl.clone());
    let inv = p_matrix_at_one(&kl).inverse().expect("unitriangular");
    let mut ok = true;
    let mut checked = 0;
    for w in g.elements() {
        let (support, single) = f.gr1_minimal_support(&BTreeMap::from([(w, BigInt::from(1))]));
        // K-coordinates: k = (P(1)^T)^{-1} kbar, i.e. k_y = inv[w][y].
        let nonzero: Vec<_> = g.elements().filter(|y| !inv[(w.index(), y.index())].is_zero()).collect();
        let min = nonzero.iter().map(|&y| g.length(y)).min().expect("nonempty");
        let expected: BTreeSet<_> = nonzero.into_iter().filter(|&y| g.length(y) == min).collect();
        let conj = expected.iter().all(|&y| g.are_conjugate(y, *expected.iter().next().unwrap()));
        ok &= support == expected && single == conj && single;
        checked += 1;
    }
    // Two-element K-support {s1, s2}: conjugate in A2, not in B2.
    let (s1, s2) = (g.generator(0), g.generator(1));
    let at_one = |y, w| kl.kl_polynomial(y, w).specialize(&BigRational::one(), SpecializeMode::V).unwrap().to_integer();
    let mut kbar = BTreeMap::new();
    for u in g.elements() {
        let c = at_one(s1, u) + at_one(s2, u);
        if !c.is_zero() {
            kbar.insert(u, c);
        }
    }
    let (support, single) = f.gr1_minimal_support(&kbar);
    ok &= support == BTreeSet::from([s1, s2]) && single == g.are_conjugate(s1, s2);
    Outcome { ok, detail: format!("{t}: {checked} single-coordinate inputs, pair support single_class={single}") }
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        (
            "1 KL inverse",
            Box::new(|| {
                timed(Duration::from_secs(60), || {
                    suites(Suite::KlInverse, &["A1", "A2", "A3", "B2", "G2", "I2:5"], &opts)
                })
            }),
        ),
        (
            "2 KL oracle equivalence",
            Box::new(|| timed(Duration::from_secs(120), || suites(Suite::KlOracle, &SMALL_TYPES, &opts))),
        ),
        ("3 Lambda linearity", Box::new(|| suites(Suite::Lambda, &ALL_TYPES, &opts))),
        ("4 a/b coefficient symmetry", Box::new(|| suites(Suite::AbSymmetry, &ALL_TYPES, &opts))),
        ("5 T_s c_w closed rules", Box::new(|| suites(Suite::TsRules, &ALL_TYPES, &opts))),
        (
            "6 centrality",
            Box::new(|| timed(Duration::from_secs(120), || suites(Suite::Centrality, &CENTRE_TYPES, &opts))),
        ),
        ("7 dagger identity", Box::new(|| suites(Suite::DaggerIdentity, &CENTRE_TYPES, &opts))),
        ("8 beta twist", Box::new(|| suites(Suite::BetaTwist, &["A1", "A2"], &opts))),
        (
            "9 PGL2 golden table",
            Box::new(|| match pgl2_table(12) {
                Ok(r) => Outcome {
                    ok: r.passed(),
                    detail: format!("{}/{} entries", r.instances - r.failures.len(), r.instances),
                },
                Err(e) => Outcome { ok: false, detail: e.to_string() },
            }),
        ),
        ("10 Gr triangularity", Box::new(triangularity)),
        (
            "11 specialization consistency",
            Box::new(|| suites(Suite::PairingSpecialize, &["A1", "A2", "A3", "B2", "G2"], &opts)),
        ),
        (
            "12 minimal support",
            Box::new(|| {
                let (a, b) = (minimal_support("A2"), minimal_support("B2"));
                Outcome { ok: a.ok && b.ok, detail: format!("{}; {}", a.detail, b.detail) }
            }),
        ),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let out = run();
        if !out.ok {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if out.ok { "PASS" } else { "FAIL" }, out.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
