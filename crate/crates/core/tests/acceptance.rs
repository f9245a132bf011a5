//! One test per acceptance criterion. Each writes a single `criterion N: PASS|FAIL` line to stderr,
//! bypassing the test harness's output capture, then asserts.

use std::io::Write;
use std::time::{Duration, Instant};

use cosimplex_core::corpus::{map_corpus, multi_corpus, DEFAULT_SEED};
use cosimplex_core::cosimplicial::{check_prime_stage_iso, check_pullback_square, stage_cofinality, CosimplicialMap, MultiCosimplicial};
use cosimplex_core::counterexample::build_counterexample;
use cosimplex_core::delta::{certify_terminal, matching_objects};
use cosimplex_core::diagrams::nerve_report;
use cosimplex_core::diagrams::shapes::{delta_power, diagonal_overcategory, power_degrees};
use cosimplex_core::kan_tot::{adjunction_bijection, check_kan_extension_of_standard, tot_iso_diagonal};
use cosimplex_core::report::{RunConfig, Verdict, VerificationReport};
use cosimplex_core::suites::run_suite;

const LIMIT: usize = 400_000;

fn report(n: usize, what: &str, ok: bool, detail: String) {
    let line = format!("criterion {n:>2}: {} {what} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {detail}");
}

fn within(t: Instant, bound: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < bound, format!("{:.2?} < {:?}", e, bound))
}

fn suite(name: &str, config: &RunConfig) -> VerificationReport {
    run_suite(name, config).unwrap().swap_remove(0)
}

fn verdicts(r: &VerificationReport) -> String {
    let count = |v| r.instances.iter().filter(|i| i.verdict == v).count();
    format!("{} pass, {} cap-limited, {} fail", count(Verdict::Pass), count(Verdict::CapLimited), count(Verdict::Fail))
}

fn n2() -> RunConfig {
    RunConfig { arity: 2, trunc: 2, cap: 2, ..RunConfig::default() }
}

#[test]
fn criterion_01_counterexample_component_counts() {
    let t = Instant::now();
    let b = build_counterexample(2, 2).unwrap();
    let (fast, time) = within(t, Duration::from_secs(1));
    let r = &b.report;
    let ok = r.pi0_lx_11 == 4 && r.pi0_w_11 == 2 && r.lx_is_skeleton_of_product && fast;
    report(1, "components of LX and W at (1,1)", ok, format!("{} vs {}, {time}", r.pi0_lx_11, r.pi0_w_11));
}

#[test]
fn criterion_02_kan_extension_of_standard() {
    let t = Instant::now();
    let ok = [2, 3].iter().all(|&n| check_kan_extension_of_standard(n, 2, 2).unwrap().holds);
    let (fast, time) = within(t, Duration::from_secs(30));
    report(2, "left Kan extension of the standard simplex, n in {2,3}", ok && fast, time);
}

#[test]
fn criterion_03_adjunction_bijection() {
    let t = Instant::now();
    let corpus = multi_corpus(2, 2, 2, DEFAULT_SEED).unwrap();
    let checked: Vec<bool> = corpus.iter().map(|x| adjunction_bijection(&x.value, LIMIT).unwrap().bijective).collect();
    let (fast, time) = within(t, Duration::from_secs(120));
    let ok = checked.len() >= 10 && checked.iter().all(|&b| b) && fast;
    report(3, "Kan extension / diagonal adjunction", ok, format!("{} objects, {time}", checked.len()));
}

#[test]
fn criterion_04_terminal_factorizations() {
    let t = Instant::now();
    let mut objects = 0;
    let mut ok = true;
    for n in 1..=3 {
        for k in 1..=3 {
            for o in matching_objects(n, k) {
                objects += 1;
                ok &= certify_terminal(&o.map).unwrap().holds();
            }
        }
    }
    let (fast, time) = within(t, Duration::from_secs(60));
    report(4, "terminal diagonal factorizations, n, k <= 3", ok && fast, format!("{objects} objects, {time}"));
}

#[test]
fn criterion_05_prime_stage_isomorphisms() {
    let mut checked = 0;
    let mut ok = true;
    for n in [2, 3] {
        let x = MultiCosimplicial::standard(n, 2, 2).unwrap();
        let y = cosimplex_core::cosimplicial::terminal(n, 2, 2).unwrap();
        let f = CosimplicialMap::to_terminal(&x);
        for k in 1..=2 {
            for i in -1..=(n * k) as i64 - 2 {
                let v = check_prime_stage_iso(&x, &y, &f, k, i).unwrap();
                checked += 1;
                ok &= v.isomorphism && v.limits_restrict_isomorphically && v.cofinal;
            }
        }
    }
    report(5, "P'_{i+1} -> P_i, n in {2,3}, k <= 2", ok, format!("{checked} stages"));
}

#[test]
fn criterion_06_pullback_squares() {
    let mut checked = 0;
    let mut ok = true;
    for x in &multi_corpus(2, 2, 2, DEFAULT_SEED).unwrap() {
        for k in 1..=2 {
            for i in -1..=2 * k as i64 - 2 {
                checked += 1;
                ok &= check_pullback_square(&x.value, k, i).unwrap().holds;
            }
        }
    }
    report(6, "limit over C_{i+1} is the pullback", ok, format!("{checked} squares"));
}

#[test]
fn criterion_07_cofinality_witnesses() {
    let mut witnessed = 0;
    let mut ok = true;
    for n in [2, 3] {
        for k in 1..=2 {
            for i in -1..=(n * k) as i64 - 2 {
                let v = stage_cofinality(n, k, i).unwrap();
                ok &= v.cofinal && v.witnesses.iter().all(|w| w.1.is_some());
                witnessed += v.witnesses.len();
            }
        }
    }
    report(7, "C_i left cofinal in C'_{i+1} with terminal witnesses", ok, format!("{witnessed} witnesses"));
}

#[test]
fn criterion_08_diagonal_overcategory_nerves() {
    let mut checked = 0;
    let mut ok = true;
    for n in 1..=3 {
        let shape = delta_power(n, 2);
        for o in 0..shape.num_objects() {
            let p = power_degrees(n, 2, o);
            let (cat, _) = diagonal_overcategory(&p, 2);
            let r = nerve_report(&format!("{p:?}"), &cat, 2);
            checked += 1;
            ok &= r.betti.is_acyclic();
        }
    }
    report(8, "nerves of diagonal overcategories acyclic (cap 2)", ok, format!("{checked} targets, reduced b0 and b1"));
}

#[test]
fn criterion_09_cotensors_and_end_adjunctions() {
    let c = suite("cotensor", &n2());
    let pairs = c.instances.iter().filter(|i| i.input.starts_with("K=")).count();
    let e = suite("end-adjunction", &n2());
    let ok = pairs >= 20 && c.passed() && e.passed();
    report(9, "cotensor, mapping complex and exponential agree; adjunctions", ok, format!("{pairs} pairs; {}; {}", verdicts(&c), verdicts(&e)));
}

#[test]
fn criterion_10_tot_of_diagonal() {
    let corpus = multi_corpus(2, 2, 2, DEFAULT_SEED).unwrap();
    let ok = corpus.iter().all(|x| tot_iso_diagonal(&x.value, LIMIT).unwrap().isomorphism);
    report(10, "Tot X is Tot of the diagonal", ok, format!("{} objects", corpus.len()));
}

#[test]
fn criterion_11_bousfield_kan_squares() {
    let r = suite("bk-square", &n2());
    report(11, "Bousfield-Kan squares", r.passed(), verdicts(&r));
}

#[test]
fn criterion_12_reedy_fibrations() {
    let r = suite("reedy", &n2());
    let maps = map_corpus(2, 2, 2, DEFAULT_SEED).unwrap().len();
    report(12, "diagonal preserves Reedy fibrations (capped)", r.passed(), format!("{maps} maps; {}", verdicts(&r)));
}
