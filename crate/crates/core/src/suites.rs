//! Verification suites over the corpus, one report per suite.

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::corpus::{map_corpus, multi_corpus, sset_corpus, MapInstance, Named};
use crate::cosimplicial::{
    check_diagonal_preserves_fibration, check_prime_stage_iso, check_pullback_square, reedy_lemma_instance, stage_cofinality, tower,
    MultiCosimplicial,
};
use crate::counterexample::{build_counterexample, cofibrancy_certificate};
use crate::delta::{certify_terminal, matching_objects};
use crate::diagrams::shapes::{delta_power, diagonal_overcategory, power_degrees};
use crate::diagrams::{nerve_report, HomotopyReport};
use crate::error::{Error, Result};
use crate::kan_tot::{
    adjunction_bijection, bk_data, check_bk_square, check_holimdiag_square, check_kan_extension_of_standard, cotensor_adjunction,
    end_adjunction, hom_square_commutes, homotopy_cotensor, mapping_complex, tot_iso_diagonal, StandardFrame,
};
use crate::report::{Instance, RunConfig, VerificationReport};
use crate::sset::{exponential, indiscrete, standard_boundary, standard_simplex, TruncSSet};

/// Upper bound on any single enumeration.
pub const LIMIT: usize = 400_000;

pub const SUITES: [&str; 10] = [
    "factorization",
    "filtration",
    "cofinality",
    "kan-extension",
    "cotensor",
    "end-adjunction",
    "tot-diagonal",
    "bk-square",
    "reedy",
    "counterexample",
];

fn claim(suite: &str) -> &'static str {
    match suite {
        "factorization" => "every object of the matching category has a terminal diagonal factorization",
        "filtration" => "P'_{i+1} -> P_i is an isomorphism, lim over C_{i+1} is the expected pullback, and the tower composes to the direct map",
        "cofinality" => "C_i is left cofinal in C'_{i+1}; overcategories of the diagonal have acyclic nerves",
        "kan-extension" => "the left Kan extension of the standard simplex along the diagonal is the multi-standard simplex, and maps out of it biject with maps into the diagonal",
        "cotensor" => "the homotopy cotensor and the mapping complex agree with the exponential; the cotensor adjunction is a bijection",
        "end-adjunction" => "maps K -> map(W, X) of diagrams correspond to maps W -> hom(K, X)",
        "tot-diagonal" => "Tot X is isomorphic to Tot of the diagonal",
        "bk-square" => "the Bousfield-Kan maps commute with the diagonal and the unit, on nerves and on hom-sets",
        "reedy" => "the diagonal of a Reedy fibration is a Reedy fibration, within the horn-check cap",
        "counterexample" => "the Kan extension of the degreewise 0-skeleton and the object constant in one index have different components",
        _ => "",
    }
}

/// Objects for the corpus-driven suites: the configured file or the built-in list.
pub fn corpus_objects(config: &RunConfig) -> Result<Vec<Named<MultiCosimplicial>>> {
    match &config.corpus {
        None => multi_corpus(config.arity, config.trunc, config.cap, config.seed),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse { location: path.clone(), message: e.to_string() })?;
            let doc = crate::serial::Document::parse(&text)?;
            match doc.payload {
                crate::serial::Payload::Corpus { objects } => objects
                    .iter()
                    .map(|o| Ok(Named { name: o.name.clone(), value: crate::serial::multi_from_json(&o.object)? }))
                    .collect(),
                crate::serial::Payload::MultiCosimplicial(j) => {
                    Ok(vec![Named { name: path.clone(), value: crate::serial::multi_from_json(&j)? }])
                }
                crate::serial::Payload::SimplicialSet(_) => {
                    Err(Error::Parse { location: path.clone(), message: "expected a corpus or a multicosimplicial object".into() })
                }
            }
        }
    }
}

/// Runs one suite, or every suite for `all`.
pub fn run_suite(name: &str, config: &RunConfig) -> Result<Vec<VerificationReport>> {
    config.validate()?;
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, config)).collect();
    }
    Ok(vec![run_one(name, config)?])
}

fn run_one(name: &str, c: &RunConfig) -> Result<VerificationReport> {
    let instances = match name {
        "factorization" => factorization(c),
        "filtration" => filtration(c)?,
        "cofinality" => cofinality(c),
        "kan-extension" => kan_extension(c)?,
        "cotensor" => cotensor(c),
        "end-adjunction" => end_adjunctions(c),
        "tot-diagonal" => tot_diagonal(c)?,
        "bk-square" => bk_square(c)?,
        "reedy" => reedy(c)?,
        "counterexample" => counterexample(c),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(VerificationReport { suite: name.to_string(), claim: claim(name).to_string(), config: c.clone(), instances })
}

fn attempt<T>(input: String, started: Instant, r: Result<T>, ok: impl FnOnce(String, T) -> Instance) -> Instance {
    match r {
        Ok(v) => ok(input, v),
        Err(e) => Instance::error(input, &e, started),
    }
}

fn factorization(c: &RunConfig) -> Vec<Instance> {
    #[derive(Serialize)]
    struct Cert {
        objects: usize,
        factorizations_checked: usize,
    }
    let mut out = Vec::new();
    for n in 1..=c.arity {
        for k in 1..=c.trunc {
            let t = Instant::now();
            let input = format!("n={n} k={k}");
            let r: Result<_> = matching_objects(n, k).iter().map(|o| certify_terminal(&o.map)).collect::<Result<Vec<_>>>();
            out.push(attempt(input, t, r, |input, certs| {
                let bad = certs.iter().find(|c| !c.holds()).cloned();
                let cert = Cert { objects: certs.len(), factorizations_checked: certs.iter().map(|c| c.factorizations_checked).sum() };
                Instance::new(input, bad.is_none(), &cert, t).with_witness(bad)
            }));
        }
    }
    out
}

fn same_shape(x: &MultiCosimplicial, c: &RunConfig) -> bool {
    x.arity() == c.arity && x.trunc() == c.trunc
}

fn filtration(c: &RunConfig) -> Result<Vec<Instance>> {
    #[derive(Serialize)]
    struct Stage {
        k: usize,
        i: i64,
        primed_counts: Vec<usize>,
        stage_counts: Vec<usize>,
        isomorphism: bool,
        pullback: bool,
    }
    let point = crate::cosimplicial::terminal(c.arity, c.trunc, c.cap)?;
    let mut out = Vec::new();
    for o in corpus_objects(c)?.into_iter().filter(|o| same_shape(&o.value, c)) {
        let x = o.value;
        let f = crate::cosimplicial::CosimplicialMap::to_terminal(&x);
        for k in 1..=c.trunc {
            let t = Instant::now();
            let run = || -> Result<(Vec<Stage>, bool)> {
                let mut stages = Vec::new();
                for i in -1..=(c.arity * k) as i64 - 2 {
                    let v = check_prime_stage_iso(&x, &point, &f, k, i)?;
                    let p = check_pullback_square(&x, k, i)?;
                    stages.push(Stage {
                        k,
                        i,
                        primed_counts: v.primed_counts,
                        stage_counts: v.stage_counts,
                        isomorphism: v.isomorphism && v.limits_restrict_isomorphically,
                        pullback: p.holds,
                    });
                }
                Ok((stages, tower(&x, &point, &f, k)?.composite_agrees))
            };
            out.push(attempt(format!("{} -> point, k={k}", o.name), t, run(), |input, (stages, composite)| {
                let bad = stages.iter().find(|s| !(s.isomorphism && s.pullback)).map(|s| (s.k, s.i));
                Instance::new(input, bad.is_none() && composite, &(stages, composite), t).with_witness(bad)
            }));
        }
    }
    Ok(out)
}

/// Loads a nerve report from `COSIMPLEX_CACHE` when present, else computes and stores it.
/// Simplicial cap up to which degree-truncated constructions are exact.
fn exact_cap(c: &RunConfig) -> usize {
    c.cap.min(c.trunc)
}

fn cached_nerve_report(c: &RunConfig, p: &[usize]) -> HomotopyReport {
    let cap = exact_cap(c);
    let key = format!("nerve-diag-over-{}-t{}-c{cap}.json", crate::serial::degree_key(p), c.trunc);
    let path = c.cache.as_ref().map(|d| PathBuf::from(d).join(key));
    if let Some(report) = path.as_ref().and_then(|p| std::fs::read_to_string(p).ok()).and_then(|s| serde_json::from_str(&s).ok()) {
        return report;
    }
    let (cat, _) = diagonal_overcategory(p, c.trunc);
    let report = nerve_report(&format!("{p:?}"), &cat, cap);
    if let Some(path) = path {
        let _ = std::fs::create_dir_all(path.parent().expect("file in a directory"));
        let _ = std::fs::write(path, serde_json::to_string(&report).expect("plain data"));
    }
    report
}

fn cofinality(c: &RunConfig) -> Vec<Instance> {
    let mut out = Vec::new();
    for k in 1..=c.trunc {
        for i in -1..=(c.arity * k) as i64 - 2 {
            let t = Instant::now();
            out.push(attempt(format!("n={} k={k} i={i}", c.arity), t, stage_cofinality(c.arity, k, i), |input, v| {
                let bad = v.reports.iter().find(|r| r.components != 1).cloned();
                Instance::new(input, v.cofinal, &v, t).with_witness(bad)
            }));
        }
    }
    let shape = delta_power(c.arity, c.trunc);
    for o in 0..shape.num_objects() {
        let t = Instant::now();
        let p = power_degrees(c.arity, c.trunc, o);
        let r = cached_nerve_report(c, &p);
        let holds = r.betti.is_acyclic();
        out.push(Instance::new(format!("diagonal over {p:?}"), holds, &r, t).cap_limited());
    }
    out
}

fn kan_extension(c: &RunConfig) -> Result<Vec<Instance>> {
    let t = Instant::now();
    let cap = exact_cap(c);
    let mut out = vec![attempt(
        format!("standard n={} N={} d={cap}", c.arity, c.trunc),
        t,
        check_kan_extension_of_standard(c.arity, c.trunc, cap),
        |input, v| {
            let bad = v.per_object.iter().find(|o| !o.isomorphism).map(|o| o.degrees.clone());
            let inst = Instance::new(input, v.holds, &v, t).with_witness(bad);
            if cap < c.cap { inst.cap_limited() } else { inst }
        },
    )];
    for o in corpus_objects(c)?.into_iter().filter(|o| same_shape(&o.value, c)) {
        let t = Instant::now();
        out.push(attempt(format!("adjunction at {}", o.name), t, adjunction_bijection(&o.value, LIMIT), |input, v| {
            Instance::new(input, v.bijective, &v, t).with_witness(Some((v.left, v.right)))
        }));
    }
    Ok(out)
}

fn cotensor(c: &RunConfig) -> Vec<Instance> {
    #[derive(Serialize)]
    struct Cert {
        exponential: Vec<usize>,
        cotensor: Vec<usize>,
        mapping_complex: Vec<usize>,
    }
    let cap = c.cap;
    let sources = |cap| {
        [
            ("point", TruncSSet::point(cap)),
            ("discrete(2)", TruncSSet::discrete(2, cap)),
            ("boundary(1)", standard_boundary(1, cap)),
            ("simplex(1)", standard_simplex(1, cap)),
        ]
    };
    let mut out = Vec::new();
    for (idx, name) in sset_corpus(cap, c.seed).into_iter().map(|x| x.name).enumerate() {
        // Targets whose standard frame is too large are checked at a lower cap.
        let found = (1..=cap).rev().find_map(|d| {
            let x = sset_corpus(d, c.seed).swap_remove(idx).value;
            StandardFrame::new(&x, LIMIT).ok().map(|f| (d, x, f))
        });
        let Some((d, x, frame)) = found else { continue };
        for (kname, k) in &sources(d) {
            let t = Instant::now();
            let run = || -> Result<Cert> {
                let e = exponential(k, &x, LIMIT)?;
                let h = homotopy_cotensor(&x, k, &frame, LIMIT)?;
                let m = mapping_complex(k, &x, &frame, LIMIT)?;
                if !(h.isomorphic && m.isomorphic && h.object.counts() == e.counts() && m.object.counts() == e.counts()) {
                    return Err(Error::NotSimplicial(format!("comparison with the exponential fails: {:?} {:?}", h.isomorphic, m.isomorphic)));
                }
                Ok(Cert { exponential: e.counts().to_vec(), cotensor: h.object.counts().to_vec(), mapping_complex: m.object.counts().to_vec() })
            };
            let input = if d < cap { format!("K={kname}, X={name}, d={d}") } else { format!("K={kname}, X={name}") };
            out.push(attempt(input, t, run(), |input, cert| {
                let inst = Instance::new(input, true, &cert, t);
                if d < cap { inst.cap_limited() } else { inst }
            }));
        }
    }
    let triples = [
        ("simplex(1)", standard_simplex(1, cap), "boundary(1)", standard_boundary(1, cap), "indiscrete(2)", indiscrete(2, cap)),
        ("boundary(1)", standard_boundary(1, cap), "simplex(1)", standard_simplex(1, cap), "simplex(1)", standard_simplex(1, cap)),
        ("discrete(2)", TruncSSet::discrete(2, cap), "simplex(1)", standard_simplex(1, cap), "boundary(2)", standard_boundary(2, cap)),
    ];
    for (kn, k, wn, w, xn, x) in &triples {
        let t = Instant::now();
        out.push(attempt(format!("adjunction K={kn}, W={wn}, X={xn}"), t, cotensor_adjunction(k, w, x, LIMIT), |input, v| {
            Instance::new(input, v.bijective, &v, t).with_witness(Some((v.left, v.right)))
        }));
    }
    out
}

fn end_adjunctions(c: &RunConfig) -> Vec<Instance> {
    let cap = c.cap.min(2);
    let mut out = Vec::new();
    for (arity, trunc) in [(1, 1), (2, 1)] {
        let build = || -> Result<Vec<(String, MultiCosimplicial)>> {
            Ok(vec![
                ("standard".to_string(), MultiCosimplicial::standard(arity, trunc, cap)?),
                ("point".to_string(), crate::cosimplicial::terminal(arity, trunc, cap)?),
                ("constant discrete(2)".to_string(), MultiCosimplicial::constant(arity, trunc, &TruncSSet::discrete(2, cap))?),
            ])
        };
        let Ok(diagrams) = build() else { continue };
        let ws = [("point", TruncSSet::point(cap)), ("simplex(1)", standard_simplex(1, cap))];
        for (kn, k) in &diagrams {
            for (xn, x) in &diagrams {
                for (wn, w) in &ws {
                    let t = Instant::now();
                    let input = format!("shape {}^{arity}: K={kn}, X={xn}, W={wn}", trunc + 1);
                    out.push(attempt(input, t, end_adjunction(k.diagram(), x.diagram(), w, LIMIT), |input, v| {
                        Instance::new(input, v.bijective, &v, t).with_witness(Some((v.left, v.right)))
                    }));
                }
            }
        }
    }
    out
}

fn tot_diagonal(c: &RunConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for o in corpus_objects(c)? {
        let t = Instant::now();
        out.push(attempt(o.name.clone(), t, tot_iso_diagonal(&o.value, LIMIT), |input, v| {
            let witness = (v.tot_counts.clone(), v.diagonal_counts.clone());
            Instance::new(input, v.isomorphism, &v, t).with_witness(Some(witness))
        }));
    }
    Ok(out)
}

fn bk_square(c: &RunConfig) -> Result<Vec<Instance>> {
    let t = Instant::now();
    let one = bk_data(1, c.trunc, c.cap)?;
    let mut out = vec![attempt(format!("nerve square n={} N={} d={}", c.arity, c.trunc, c.cap), t, check_bk_square(c.arity, c.cap, &one), |input, v| {
        let bad = v.per_degree.iter().find(|d| !d.commutes).map(|d| d.k);
        Instance::new(input, v.holds, &v, t).with_witness(bad)
    })];
    for o in corpus_objects(c)?.into_iter().filter(|o| same_shape(&o.value, c)) {
        let t = Instant::now();
        out.push(attempt(format!("hom square at {}", o.name), t, hom_square_commutes(&o.value, &one, LIMIT), |input, (count, ok)| {
            Instance::new(input, ok, &count, t)
        }));
    }
    // the full homotopy limit is materialised only at N = d = 1
    let (small_one, small) = (bk_data(1, 1, 1)?, bk_data(c.arity, 1, 1)?);
    for (name, e) in [("discrete(2)", TruncSSet::discrete(2, 1)), ("indiscrete(2)", indiscrete(2, 1))] {
        let t = Instant::now();
        let x = MultiCosimplicial::constant(c.arity, 1, &e)?;
        out.push(attempt(format!("holim square at constant {name}, N=d=1"), t, check_holimdiag_square(&x, &small, &small_one, LIMIT), |input, v| {
            let holds = v.commutes && v.tot_iso_diagonal && v.restriction_pi0_bijective;
            Instance::new(input, holds, &v, t).cap_limited()
        }));
    }
    Ok(out)
}

fn reedy(c: &RunConfig) -> Result<Vec<Instance>> {
    let maps: Vec<Named<MapInstance>> = match &c.corpus {
        None => map_corpus(c.arity, c.trunc, c.cap, c.seed)?,
        Some(_) => corpus_objects(c)?
            .into_iter()
            .filter(|o| same_shape(&o.value, c))
            .map(|o| {
                let y = crate::cosimplicial::terminal(c.arity, c.trunc, o.value.cap())?;
                let f = crate::cosimplicial::CosimplicialMap::to_terminal(&o.value);
                Ok(Named { name: format!("{} -> point", o.name), value: MapInstance { x: o.value, y, f } })
            })
            .collect::<Result<_>>()?,
    };
    let mut out = Vec::new();
    for m in maps {
        let MapInstance { x, y, f } = &m.value;
        let t = Instant::now();
        let r = check_diagonal_preserves_fibration(x, y, f, c.check_dim);
        let precondition = r.as_ref().map(|v| v.precondition).unwrap_or(false);
        out.push(attempt(m.name.clone(), t, r, |input, v| {
            let witness = v.diagonal.first_failure().cloned();
            Instance::new(input, v.consistent, &v, t).with_witness(witness).cap_limited()
        }));
        if precondition {
            let t = Instant::now();
            let run = || -> Result<Vec<crate::cosimplicial::ReedyLemmaReport>> {
                let mut reports = Vec::new();
                for k in 1..=c.trunc {
                    for i in -1..=(c.arity * k) as i64 - 2 {
                        reports.push(reedy_lemma_instance(x, y, f, k, i, c.check_dim)?);
                    }
                }
                Ok(reports)
            };
            out.push(attempt(format!("{} (cube lemma)", m.name), t, run(), |input, reports| {
                let bad = reports.iter().find(|r| !r.consistent).map(|r| (r.k, r.i));
                Instance::new(input, bad.is_none(), &reports, t).with_witness(bad).cap_limited()
            }));
        }
    }
    Ok(out)
}

fn counterexample(c: &RunConfig) -> Vec<Instance> {
    let t = Instant::now();
    let trunc = c.trunc.max(1);
    let cap = c.cap.max(1);
    let run = || -> Result<_> {
        let b = build_counterexample(trunc, cap)?;
        let cof = cofibrancy_certificate(&b.x)?;
        Ok((b.report, cof))
    };
    vec![attempt(format!("degreewise 0-skeleton, N={trunc} d={cap}"), t, run(), |input, (r, cof)| {
        let holds = r.pi0_lx_11 == 4 && r.pi0_w_11 == 2 && r.lx_discrete && r.x_is_diagonal_of_w && r.lx_is_skeleton_of_product && cof.holds;
        #[derive(Serialize)]
        struct Cert<A, B> {
            counts: A,
            cofibrancy: B,
        }
        Instance::new(input, holds, &Cert { counts: r, cofibrancy: cof }, t)
    })]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", &RunConfig::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn counterexample_suite_reports_the_counts() {
        let r = run_suite("counterexample", &RunConfig::default()).unwrap();
        assert!(r[0].passed());
        let text = r[0].to_json_lines(false);
        assert!(text.contains("\"pi0_lx_11\":4") && text.contains("\"pi0_w_11\":2"));
    }

    #[test]
    fn factorization_suite_is_deterministic() {
        let c = RunConfig { arity: 2, trunc: 2, ..RunConfig::default() };
        let a = run_suite("factorization", &c).unwrap();
        let b = run_suite("factorization", &c).unwrap();
        assert!(a[0].passed());
        assert_eq!(a[0].to_json_lines(false), b[0].to_json_lines(false));
    }
}
