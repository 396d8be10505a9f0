//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line (visible with `--nocapture`).

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use idri_core::cli::{self, EXIT_OK};
use idri_core::metric::Rational;
use idri_core::oracle::DEFAULT_CAP;
use idri_core::{
    aggregate, all_focal_stats, co_citer_multiplicities, compute_metric, condition_11, decay_trend,
    enumerate_q, focal_stats, generate, write_edges_csv, CitationGraph, FocalStats, IncludeRule,
    MetricStatus, RefMode, SynthConfig,
};
use num_traits::Zero;

const CORPUS_SIZE: u64 = 200;

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn report(n: u32, title: &str, failures: &[String], detail: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} {title} ({detail})");
    assert!(
        failures.is_empty(),
        "criterion {n} ({title}) failed:\n{}",
        failures
            .iter()
            .take(20)
            .cloned()
            .collect::<Vec<_>>()
            .join("\n")
    );
}

fn check<T: PartialEq + std::fmt::Debug>(failures: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        failures.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

fn synthetic_graphs() -> Vec<CitationGraph> {
    [
        (60, 3, 0.5, 1),
        (200, 5, 0.2, 7),
        (500, 10, 0.1, 42),
        (1000, 4, 1.0, 3),
        (5000, 10, 0.1, 42),
    ]
    .into_iter()
    .map(|(num_papers, refs_per_paper, uniform_mix, seed)| {
        generate(&SynthConfig {
            num_papers,
            refs_per_paper,
            uniform_mix,
            seed,
        })
        .unwrap()
    })
    .collect()
}

/// Stats for every paper with defined xm (D >= 1) over the fuzz corpus,
/// grouped per graph.
fn corpus_stats() -> Vec<Vec<FocalStats>> {
    common::corpus(CORPUS_SIZE)
        .iter()
        .map(|g| all_focal_stats(g, RefMode::Dataset).unwrap())
        .collect()
}

#[test]
fn criterion_01_single_focal_fixture() {
    let g = common::load_fixture("single_focal.csv");
    let mut failures = Vec::new();
    check(&mut failures, "edges", g.edge_count(), 7);
    let st = focal_stats(&g, "i", RefMode::Dataset).unwrap();
    check(
        &mut failures,
        "(s, D, k, q)",
        (st.s, st.d, st.k, st.q),
        (3, 4, 3, 1),
    );
    let m = compute_metric(&st);
    check(&mut failures, "status", m.status, MetricStatus::Ok);
    check(&mut failures, "xm", m.xm, Some(r(1, 4)));
    check(&mut failures, "xm_norm", m.xm_norm, Some(r(3, 8)));
    check(&mut failures, "idri", m.idri, Some(r(5, 8)));
    report(
        1,
        "single-focal fixture",
        &failures,
        "s=3 D=4 k=3 q=1 xm=1/4 xm_norm=3/8 idri=5/8",
    );
}

#[test]
fn criterion_02_pair_fixture() {
    let g = common::load_fixture("pair.csv");
    let mut failures = Vec::new();
    let a = focal_stats(&g, "i", RefMode::Dataset).unwrap();
    let b = focal_stats(&g, "i_prime", RefMode::Dataset).unwrap();
    check(&mut failures, "i (s, D, q)", (a.s, a.d, a.q), (3, 5, 2));
    check(&mut failures, "i' (s, D, q)", (b.s, b.d, b.q), (4, 5, 1));
    check(
        &mut failures,
        "oracle q_i",
        enumerate_q(&g, "i", DEFAULT_CAP).unwrap(),
        2,
    );
    check(
        &mut failures,
        "oracle q_i'",
        enumerate_q(&g, "i_prime", DEFAULT_CAP).unwrap(),
        1,
    );
    check(
        &mut failures,
        "xm_norm i",
        compute_metric(&a).xm_norm,
        Some(r(3, 5)),
    );
    check(
        &mut failures,
        "xm_norm i'",
        compute_metric(&b).xm_norm,
        Some(r(4, 15)),
    );

    let joint = aggregate("pair", &[a, b], IncludeRule::default()).unwrap();
    check(&mut failures, "xm_joint", joint.xm_joint, Some(r(3, 10)));
    check(
        &mut failures,
        "xm_norm_joint",
        joint.xm_norm_joint,
        Some(r(21, 50)),
    );
    check(
        &mut failures,
        "idri_joint",
        joint.idri_joint,
        Some(r(29, 50)),
    );

    // same numbers through the aggregate command
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("groups.csv");
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = cli::run(
        [
            "idri".as_ref(),
            "aggregate".as_ref(),
            "--edges".as_ref(),
            common::fixture("pair.csv").as_os_str(),
            "--metadata".as_ref(),
            common::fixture("pair_meta.csv").as_os_str(),
            "--out".as_ref(),
            out.as_os_str(),
        ],
        &mut stdout,
        &mut stderr,
    );
    check(&mut failures, "aggregate exit code", code, EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    check(
        &mut failures,
        "aggregate row",
        text.lines().nth(1).unwrap_or(""),
        "pair,2,7,10,3,7,0.3000,0.4200,0.5800,58.0%,ok",
    );
    report(
        2,
        "pair fixture",
        &failures,
        "xm_norm 3/5 and 4/15, joint 21/50, idri 29/50",
    );
}

#[test]
fn criterion_03_cocitation_degree_identity() {
    let mut failures = Vec::new();
    let mut focals = 0usize;
    let graphs: Vec<CitationGraph> = common::corpus(CORPUS_SIZE)
        .into_iter()
        .chain(synthetic_graphs())
        .collect();
    for (gi, g) in graphs.iter().enumerate() {
        let small = g.len() <= 1000;
        for st in all_focal_stats(g, RefMode::Dataset).unwrap() {
            focals += 1;
            let ix = g.index_of(st.focal.as_str()).unwrap();
            // mass recomputed from reference counts, not from the engine
            let mass: u64 = g
                .citers_of(ix)
                .iter()
                .map(|&j| g.references_of(j as usize).len() as u64 - 1)
                .sum();
            if st.d != mass || st.k + st.q != st.d {
                failures.push(format!(
                    "graph {gi} focal {}: {st:?}, mass {mass}",
                    st.focal
                ));
            }
            if small {
                let distinct = co_citer_multiplicities(g, st.focal.as_str()).unwrap().len() as u64;
                if distinct != st.k {
                    failures.push(format!(
                        "graph {gi} focal {}: k {} vs {distinct}",
                        st.focal, st.k
                    ));
                }
            }
        }
    }
    report(
        3,
        "k = D - q",
        &failures,
        &format!(
            "{} graphs, {focals} focal papers, {} violations",
            graphs.len(),
            failures.len()
        ),
    );
}

#[test]
fn criterion_04_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut focals = 0usize;
    for (gi, g) in common::corpus(CORPUS_SIZE).iter().enumerate() {
        for id in g.ids() {
            let fast = focal_stats(g, id.as_str(), RefMode::Dataset).unwrap().q;
            let oracle = enumerate_q(g, id.as_str(), DEFAULT_CAP).unwrap();
            focals += 1;
            if fast != oracle {
                failures.push(format!(
                    "graph {gi} focal {id}: fast={fast} oracle={oracle}"
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:?} exceeds 60 s"));
    }
    report(
        4,
        "oracle equivalence",
        &failures,
        &format!("{focals} focal papers, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_05_bounds() {
    let mut failures = Vec::new();
    let mut ok = 0usize;
    for st in corpus_stats().into_iter().flatten() {
        let m = compute_metric(&st);
        if m.status != MetricStatus::Ok {
            continue;
        }
        ok += 1;
        let xm = m.xm.unwrap();
        let max = r(st.s as i128 - 1, st.s as i128);
        let norm = m.xm_norm.unwrap();
        if xm < Rational::zero()
            || xm > max
            || norm < Rational::zero()
            || norm > Rational::from_integer(1)
        {
            failures.push(format!("{st:?}: xm={xm} norm={norm}"));
        }
    }
    report(
        5,
        "bound suite",
        &failures,
        &format!("{ok} ok-status results"),
    );
}

/// Pairs of papers from the same corpus graph whose xm is defined.
fn fuzzed_pairs() -> Vec<(FocalStats, FocalStats)> {
    let mut pairs = Vec::new();
    for stats in corpus_stats() {
        let defined: Vec<FocalStats> = stats.into_iter().filter(|st| st.d >= 1).collect();
        for a in 0..defined.len() {
            for b in a + 1..defined.len() {
                pairs.push((defined[a].clone(), defined[b].clone()));
            }
        }
    }
    pairs
}

#[test]
fn criterion_06_mediant_inequality() {
    let mut failures = Vec::new();
    let pairs = fuzzed_pairs();
    let mut strict = 0usize;
    for (a, b) in &pairs {
        let xa = compute_metric(a).xm.unwrap();
        let xb = compute_metric(b).xm.unwrap();
        let joint = aggregate(
            "pair",
            &[a.clone(), b.clone()],
            IncludeRule::AtLeastOneCiter,
        )
        .unwrap()
        .xm_joint
        .unwrap();
        let (lo, hi) = (xa.min(xb), xa.max(xb));
        let ok = if xa == xb {
            joint == xa
        } else {
            strict += 1;
            lo < joint && joint < hi
        };
        if !ok {
            failures.push(format!(
                "{} vs {}: {xa} {xb} joint {joint}",
                a.focal, b.focal
            ));
        }
    }
    if pairs.len() < 1000 {
        failures.push(format!("only {} pairs", pairs.len()));
    }
    report(
        6,
        "mediant inequality",
        &failures,
        &format!("{} pairs, {strict} with distinct xm", pairs.len()),
    );
}

#[test]
fn criterion_07_betweenness_diagnostic() {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let mut outside = 0usize;
    for (a, b) in fuzzed_pairs() {
        let (ma, mb) = (compute_metric(&a), compute_metric(&b));
        let (Some(na), Some(nb)) = (ma.xm_norm, mb.xm_norm) else {
            continue;
        };
        checked += 1;
        let joint = aggregate("pair", &[a.clone(), b.clone()], IncludeRule::default()).unwrap();
        let j = joint.xm_norm_joint.unwrap();
        if j < na.min(nb) || j > na.max(nb) {
            outside += 1;
            let c = condition_11(&a, &b).unwrap();
            if c <= Rational::zero() {
                failures.push(format!(
                    "{} vs {}: joint {j} outside [{na}, {nb}] with condition {c}",
                    a.focal, b.focal
                ));
            }
        }
    }
    if checked < 1000 {
        failures.push(format!("only {checked} pairs with defined xm_norm"));
    }
    report(
        7,
        "betweenness diagnostic",
        &failures,
        &format!("{checked} pairs, {outside} outside the member range"),
    );
}

#[test]
fn criterion_08_decay_property() {
    let start = Instant::now();
    let g = generate(&SynthConfig {
        num_papers: 5000,
        refs_per_paper: 10,
        uniform_mix: 0.1,
        seed: 42,
    })
    .unwrap();
    let rho = decay_trend(&g, 2).unwrap();
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if rho >= 0.0 {
        failures.push(format!("Spearman(s, q/D) = {rho:.4} is not negative"));
    }
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("runtime {elapsed:?} exceeds 30 s"));
    }
    report(
        8,
        "decay of q/D with s",
        &failures,
        &format!("rho = {rho:.4}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_09_report_format() {
    let output = Command::new(env!("CARGO_BIN_EXE_idri"))
        .args(["compute", "--edges"])
        .arg(common::fixture("single_focal.csv"))
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&output.stdout);
    let mut failures = Vec::new();
    check(&mut failures, "exit code", output.status.code(), Some(0));
    check(
        &mut failures,
        "header",
        text.lines().next().unwrap_or(""),
        "paper_id,s,D,k,q,xm,xm_norm,idri,idri_percent,status",
    );
    let row_i = text.lines().find(|l| l.starts_with("i,")).unwrap_or("");
    check(
        &mut failures,
        "row i",
        row_i,
        "i,3,4,3,1,0.2500,0.3750,0.6250,62.5%,ok",
    );
    report(
        9,
        "report format",
        &failures,
        "compute on single-focal renders 62.5%",
    );
}

#[test]
fn criterion_10_performance() {
    let config = SynthConfig {
        num_papers: 100_000,
        refs_per_paper: 10,
        uniform_mix: 0.1,
        seed: 2020,
    };
    let g = generate(&config).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.csv");
    write_edges_csv(&g, std::fs::File::create(&edges).unwrap()).unwrap();
    drop(g);

    let mut failures = Vec::new();
    let mut outputs = Vec::new();
    let mut timings = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("out{run}.csv"));
        let start = Instant::now();
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let code = cli::run(
            [
                "idri".as_ref(),
                "compute".as_ref(),
                "--edges".as_ref(),
                edges.as_os_str(),
                "--out".as_ref(),
                out.as_os_str(),
            ],
            &mut stdout,
            &mut stderr,
        );
        let elapsed = start.elapsed();
        check(&mut failures, "exit code", code, EXIT_OK);
        if elapsed > Duration::from_secs(10) {
            failures.push(format!("run {run} took {elapsed:?}"));
        }
        timings.push(elapsed);
        outputs.push(std::fs::read(&out).unwrap_or_default());
    }
    if outputs[0] != outputs[1] || outputs[0].is_empty() {
        failures.push("outputs differ between runs".into());
    }
    report(
        10,
        "performance smoke test",
        &failures,
        &format!(
            "{} edges, runs {:.2?} / {:.2?}, {} output bytes",
            config.expected_edges(),
            timings[0],
            timings[1],
            outputs[0].len()
        ),
    );
}
