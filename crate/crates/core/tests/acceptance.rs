//! Acceptance gate: one line per criterion, non-zero exit if any fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::*;
use cubecycle::bounds::{upper_bound_exponent, upper_bound_pipeline, Exponent};
use cubecycle::cycles::check_counting_bound;
use cubecycle::exact::{ex_cube, ex_graph, ExactOptions, ExtremalWitness};
use cubecycle::hypergraph::{
    extract_two_lift, find_largest_k2q, star_count, two_lift, two_lift_labels, LiftSearchOutcome,
};
use cubecycle::partite::check_representation;
use cubecycle::prob::{make_params, mono_cycle_stats, params_with_colors, run_trial};
use cubecycle::{build_qn, build_representation, census, Budget, SimpleGraph, ThreeGraph};

type Check = Result<String, String>;
type Criterion = fn() -> Check;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str], stdin: Option<&[u8]>) -> (i32, Vec<u8>, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cubecycle"))
        .args(args)
        .env_remove("CUBECYCLE_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cli");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(input) = stdin {
            pipe.write_all(input).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn manifest_of(stderr: &str) -> Value {
    let line = stderr.lines().last().expect("manifest line");
    serde_json::from_str(line).expect("manifest json")
}

fn criterion_1() -> Check {
    for ell in [7u32, 9, 11, 13] {
        let k = (ell - 1) / 2;
        let start = Instant::now();
        let rep = build_representation(ell, ell, None).map_err(|e| e.to_string())?;
        let report = check_representation(&rep);
        let elapsed = start.elapsed();
        ensure!(report.passed, "ell={ell}: {:?}", report.first_failure());
        ensure!(
            report.clauses.len() == 6,
            "ell={ell}: {} clauses",
            report.clauses.len()
        );
        ensure!(
            elapsed < Duration::from_secs(1),
            "ell={ell}: took {elapsed:?}"
        );
        let h = rep.hgraph();
        let la = h.link(rep.labels.a).unwrap();
        let lb = h.link(rep.labels.b).unwrap();
        ensure!(
            la.is_path_of_length(2 * k as usize - 3),
            "ell={ell}: L(a) has {} edges",
            la.edge_count()
        );
        ensure!(
            lb.is_path_of_length(4),
            "ell={ell}: L(b) has {} edges",
            lb.edge_count()
        );
        let union = la.union(&lb);
        ensure!(
            union.edge_count() == ell as usize - 2,
            "ell={ell}: union has {} edges",
            union.edge_count()
        );
        let leaves: Vec<u32> = union
            .vertices()
            .iter()
            .copied()
            .filter(|&v| union.degree(v) == 1)
            .collect();
        ensure!(
            leaves.len() == 1,
            "ell={ell}: union has {} leaves",
            leaves.len()
        );
        let mut core = SimpleGraph::new();
        for &(u, v) in union.edges() {
            if u != leaves[0] && v != leaves[0] {
                core.add_edge(u, v).unwrap();
            }
        }
        ensure!(
            core.is_cycle_of_length(ell as usize - 3),
            "ell={ell}: union minus pendant is not C_{}",
            ell - 3
        );

        let ell_s = ell.to_string();
        let (code, built, _) = cli(&["rep", "build", "--ell", &ell_s], None);
        ensure!(code == 0, "ell={ell}: rep build exit {code}");
        let (code, verified, _) = cli(&["rep", "verify"], Some(&built));
        ensure!(code == 0, "ell={ell}: rep verify exit {code}");
        let v: Value = serde_json::from_slice(&verified).unwrap();
        ensure!(v["passed"] == true, "ell={ell}: CLI report not passed");
    }
    Ok("ell 7, 9, 11, 13: six clauses pass, link shapes exact, CLI pipe exit 0".into())
}

const CENSUS_CASES: [(u32, usize); 5] = [(2, 4), (3, 4), (3, 6), (4, 4), (4, 6)];

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut seen = Vec::new();
    for (n, len) in CENSUS_CASES {
        let c = census(n, len, Budget::default()).map_err(|e| e.to_string())?;
        let x = c
            .uniform_count()
            .ok_or(format!("Q_{n}, {len}: per-edge counts differ"))?;
        let edges = u64::from(n) << (n - 1);
        ensure!(
            len as u64 * c.total == edges * x,
            "Q_{n}, {len}: {len}*{} != {edges}*{x}",
            c.total
        );
        let oracle = closed_walk_cycle_count(&adjacency(&build_qn(n).unwrap()), len);
        ensure!(
            c.total == oracle,
            "Q_{n}, {len}: N={} but closed-walk oracle gives {oracle}",
            c.total
        );
        let closed = match len {
            4 => binom(n.into(), 2) << (n - 2),
            _ => (16 * binom(n.into(), 3)) << (n - 3),
        };
        ensure!(
            c.total == closed,
            "Q_{n}, {len}: N={} but closed form gives {closed}",
            c.total
        );
        seen.push(format!("N(Q{n},C{len})={} x={x}", c.total));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(seen.join(", "))
}

fn criterion_3() -> Check {
    let mut worst: f64 = 0.0;
    for (n, len) in CENSUS_CASES {
        let rows = check_counting_bound(&[n], len, Budget::default()).map_err(|e| e.to_string())?;
        let r = &rows[0];
        let scale = u128::from(n).pow(len as u32 / 2) << n;
        ensure!(
            u128::from(r.total) <= scale,
            "Q_{n}, {len}: N={} exceeds n^l 2^n = {scale}",
            r.total
        );
        ensure!(r.ratio <= 1.0, "Q_{n}, {len}: ratio {}", r.ratio);
        worst = worst.max(r.ratio);
    }
    Ok(format!("max N/(n^l 2^n) = {worst:.4}"))
}

fn criterion_4() -> Check {
    for ell in (7..=99u32).step_by(2) {
        let p = upper_bound_pipeline(ell).map_err(|e| e.to_string())?;
        let expected =
            Exponent::new(5, 6).unwrap() + Exponent::new(1, 3 * (i64::from(ell) - 3)).unwrap();
        ensure!(
            p.final_exp == expected,
            "ell={ell}: final {} != {expected}",
            p.final_exp
        );
        ensure!(
            upper_bound_exponent(ell).unwrap() == expected,
            "ell={ell}: exponent mismatch"
        );
    }
    for (ell, num, den) in [(7, 11, 12), (9, 8, 9), (13, 13, 15)] {
        let e = upper_bound_exponent(ell).unwrap();
        ensure!((e.numer(), e.denom()) == (num, den), "ell={ell}: {e}");
    }
    Ok("odd ell 7..99 exact; 11/12, 8/9, 13/15".into())
}

fn random_three_graph(rng: &mut ChaCha8Rng, n: u32, density: f64) -> ThreeGraph {
    let mut g = ThreeGraph::with_vertices(n);
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if rng.random_bool(density) {
                    g.add_edge([a, b, c]).unwrap();
                }
            }
        }
    }
    g
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tight = 0;
    for i in 0..200 {
        let n = rng.random_range(3..=40);
        let density = [0.01, 0.05, 0.1, 0.2, 0.35][i % 5];
        let g = random_three_graph(&mut rng, n, density);
        let s = star_count(&g);
        let stars = star_scan(&g);
        let (a, b, pairs) = k2q_scan(&g);
        let w = find_largest_k2q(&g).map_err(|e| e.to_string())?;
        ensure!(
            s.stars == stars,
            "instance {i}: X={} but scan gives {stars}",
            s.stars
        );
        ensure!(
            (w.a, w.b, &w.pairs) == (a, b, &pairs),
            "instance {i}: k2q ({},{}) vs scan ({a},{b})",
            w.a,
            w.b
        );
        let pair_count = binom(n.into(), 2);
        ensure!(
            stars <= pairs.len() as u64 * pair_count,
            "instance {i}: X={stars} > q*C(n,2)"
        );
        ensure!(s.upper_q_bound_check, "instance {i}: library check false");
        tight += usize::from(stars == pairs.len() as u64 * pair_count);
    }
    let k4 = star_count(&ThreeGraph::complete(4));
    ensure!(
        (k4.stars, k4.q, k4.pair_count) == (6, 1, 6),
        "K4: X={} q={}",
        k4.stars,
        k4.q
    );
    ensure!(k4.stars == k4.q * k4.pair_count, "K4 not tight");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "200 random instances plus K4 (X=6=q*C(4,2)); {tight} random instances tight"
    ))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..100 {
        let left = rng.random_range(1..=5u32);
        let right = rng.random_range(1..=(10 - left).min(5));
        let mut edges = Vec::new();
        for u in 1..=left {
            for v in left + 1..=left + right {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        if edges.is_empty() {
            edges.push((1, left + 1));
        }
        let h = SimpleGraph::from_edges(edges).unwrap();
        let lifted = two_lift(&h).map_err(|e| e.to_string())?;
        let (a, b) = two_lift_labels(&h);
        ensure!(
            lifted.link(a).unwrap() == h && lifted.link(b).unwrap() == h,
            "round trip {i} failed"
        );
    }

    let c4 = SimpleGraph::cycle(4).unwrap();
    let mut found = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let n = 14u32;
        let mut labels: Vec<u32> = (1..=n).collect();
        for j in (1..labels.len()).rev() {
            labels.swap(j, rng.random_range(0..=j));
        }
        let (a, b) = (labels[0], labels[1]);
        let cyc = &labels[2..6];
        let mut g = ThreeGraph::with_vertices(n);
        for j in 0..4 {
            let (y, z) = (cyc[j], cyc[(j + 1) % 4]);
            for apex in [a, b] {
                let mut t = [apex, y, z];
                t.sort_unstable();
                g.add_edge(t).unwrap();
            }
        }
        let mut noise = 0;
        while noise < 20 {
            let mut t = [
                rng.random_range(1..=n),
                rng.random_range(1..=n),
                rng.random_range(1..=n),
            ];
            t.sort_unstable();
            if t[0] != t[1] && t[1] != t[2] && g.add_edge(t).unwrap() {
                noise += 1;
            }
        }
        match extract_two_lift(&g, &c4, Budget::default()).map_err(|e| e.to_string())? {
            LiftSearchOutcome::Found { witness, .. } => {
                ensure!(witness.holds_in(&g), "seed {seed}: witness not in host");
                let (ta, tb) = two_lift_labels(&c4);
                let emb = &witness.embedding;
                ensure!(
                    emb[&ta] == witness.a && emb[&tb] == witness.b,
                    "seed {seed}: apex map"
                );
                let images: BTreeSet<u32> = emb.values().copied().collect();
                ensure!(
                    images.len() == emb.len(),
                    "seed {seed}: embedding not injective"
                );
                for &(u, v) in c4.edges() {
                    for apex in [witness.a, witness.b] {
                        let mut t = [apex, emb[&u], emb[&v]];
                        t.sort_unstable();
                        ensure!(g.contains_edge(t), "seed {seed}: lifted edge {t:?} missing");
                    }
                }
                found += 1;
            }
            LiftSearchOutcome::Failed { .. } => {}
        }
    }
    ensure!(found >= 95, "planted two-lift recovered in {found}/100");
    Ok(format!(
        "100/100 link round trips; planted recovery {found}/100, every witness re-checked"
    ))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let c = 0.5;
    let mut summary = Vec::new();
    for n in 6..=10u32 {
        let params0 = make_params(n, 2, c, 0).map_err(|e| e.to_string())?;
        ensure!(params0.p <= 1.0, "n={n}: p={}", params0.p);
        let mut kept = Vec::new();
        for seed in 0..30u64 {
            let params = make_params(n, 2, c, seed).unwrap();
            let r = run_trial(&params, 0, Budget::default()).map_err(|e| e.to_string())?;
            ensure!(
                r.certified,
                "n={n} seed={seed}: library certification failed"
            );
            let edges = edge_pairs(&r.kept_edges);
            ensure!(
                !cube_has_square(n, &edges),
                "n={n} seed={seed}: independent scan finds a 4-cycle"
            );
            ensure!(
                edges.len() == r.kept_edge_count,
                "n={n} seed={seed}: edge count mismatch"
            );
            kept.push(r.kept_edge_count);
        }
        kept.sort_unstable();
        let median = (kept[14] + kept[15]) as f64 / 2.0;
        let floor = 0.5 * params0.p * f64::from(n) * 2f64.powi(n as i32 - 1);
        ensure!(median >= floor, "n={n}: median kept {median} < {floor:.1}");
        summary.push(format!("n={n} median {median} >= {floor:.1}"));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("c={c}, 150/150 certified; {}", summary.join("; ")))
}

fn criterion_8() -> Check {
    let n_cycles = census(4, 4, Budget::default())
        .map_err(|e| e.to_string())?
        .total;
    ensure!(n_cycles == 24, "N(Q4,C4) = {n_cycles}");
    let expected = n_cycles as f64 / 8.0;
    let params = params_with_colors(4, 2, 2, 8).map_err(|e| e.to_string())?;
    let stats = mono_cycle_stats(&params, 10_000, Budget::default()).map_err(|e| e.to_string())?;
    ensure!(
        (stats.expected - expected).abs() < 1e-12,
        "library expectation {}",
        stats.expected
    );
    let mean = stats.counts.iter().sum::<u64>() as f64 / 1e4;
    let var = stats
        .counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / 9999.0;
    let se = (var / 1e4).sqrt();
    let z = (mean - expected) / se;
    ensure!(
        z.abs() <= 5.0,
        "mean {mean} is {z:.2} standard errors from {expected}"
    );
    Ok(format!(
        "mean {mean:.4} vs {expected}, se {se:.4}, z = {z:.2}"
    ))
}

fn subsets_all_contain(
    all: &[(u32, u32)],
    size: u32,
    bad: impl Fn(&BTreeSet<(u32, u32)>) -> bool,
) -> bool {
    (0u32..1 << all.len())
        .filter(|m| m.count_ones() == size)
        .all(|m| {
            let s: BTreeSet<(u32, u32)> = (0..all.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            bad(&s)
        })
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let c4 = SimpleGraph::cycle(4).unwrap();
    let mut lines = Vec::new();
    for opts in [ExactOptions::default(), ExactOptions::naive()] {
        let r = ex_cube(2, 4, &opts).map_err(|e| e.to_string())?;
        ensure!(
            r.value == 3 && r.exhaustive && r.witness_certified,
            "ex(Q2,C4) = {}",
            r.value
        );
        let ExtremalWitness::Cube(w) = &r.witness else {
            return Err("cube witness expected".into());
        };
        let edges = edge_pairs(w);
        ensure!(
            edges.len() == 3 && !cube_has_square(2, &edges),
            "ex(Q2,C4) witness invalid"
        );
        let q2: Vec<(u32, u32)> = edge_pairs(&build_qn(2).unwrap()).into_iter().collect();
        ensure!(
            subsets_all_contain(&q2, 4, |s| cube_has_square(2, s)),
            "Q2 with 4 edges is C4-free?"
        );

        for (n, want) in [(4u32, 4u64), (5, 6)] {
            let r = ex_graph(n, &c4, &opts).map_err(|e| e.to_string())?;
            ensure!(
                r.value == want && r.exhaustive && r.witness_certified,
                "ex({n},C4) = {}",
                r.value
            );
            let ExtremalWitness::Graph(w) = &r.witness else {
                return Err("graph witness expected".into());
            };
            let edges: BTreeSet<(u32, u32)> = w.edges().iter().copied().collect();
            ensure!(
                edges.len() as u64 == want && !graph_has_c4(&edges),
                "ex({n},C4) witness invalid"
            );
            let kn: Vec<(u32, u32)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect();
            ensure!(
                subsets_all_contain(&kn, want as u32 + 1, graph_has_c4),
                "some {}-edge graph on {n} vertices is C4-free",
                want + 1
            );
        }
        lines.push(format!("symmetry={}", opts.symmetry));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!(
        "ex(Q2,C4)=3, ex(4,C4)=4, ex(5,C4)=6 for {}; witnesses and value+1 re-checked",
        lines.join(" and ")
    ))
}

fn criterion_10() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pattern = dir.path().join("c4.txt");
    std::fs::write(&pattern, SimpleGraph::cycle(4).unwrap().to_text()).unwrap();
    let lifted = dir.path().join("lift.txt");
    std::fs::write(
        &lifted,
        two_lift(&SimpleGraph::cycle(4).unwrap()).unwrap().to_text(),
    )
    .unwrap();
    let pattern = pattern.to_str().unwrap();
    let lifted = lifted.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["rep", "build", "--ell", "9"],
        vec!["cycles", "count", "--n", "4", "--two-ell", "6"],
        vec!["cycles", "enumerate", "--n", "3", "--two-ell", "6"],
        vec!["cycles", "check-bound", "--n", "2,3,4", "--two-ell", "4"],
        vec![
            "construct",
            "--n",
            "7",
            "--ell",
            "2",
            "--c",
            "0.5",
            "--seed",
            "42",
            "--trials",
            "3",
        ],
        vec![
            "construct",
            "--n",
            "6,7",
            "--ell",
            "2",
            "--c",
            "0.4,0.6",
            "--seed",
            "1",
            "--format",
            "csv",
        ],
        vec!["lll-report", "--n", "5,9", "--ell", "2", "--c", "0.3"],
        vec![
            "mono-stats",
            "--n",
            "4",
            "--ell",
            "2",
            "--colors",
            "2",
            "--trials",
            "500",
            "--seed",
            "3",
        ],
        vec!["exact", "graph", "--n", "5", "--pattern", pattern],
        vec!["exact", "cube", "--n", "3", "--two-ell", "4"],
        vec!["bounds", "--ell", "11"],
        vec!["lift", "extract", "--input", lifted],
    ];
    for args in &runs {
        let (c1, out1, err1) = cli(args, None);
        let (c2, out2, err2) = cli(args, None);
        ensure!(c1 == 0 && c2 == 0, "{args:?}: exit {c1}/{c2}: {err1}");
        ensure!(out1 == out2, "{args:?}: outputs differ");
        let (mut m1, mut m2) = (manifest_of(&err1), manifest_of(&err2));
        for m in [&mut m1, &mut m2] {
            let obj = m.as_object_mut().unwrap();
            obj.remove("started_unix_ms");
            obj.remove("finished_unix_ms");
        }
        ensure!(m1 == m2, "{args:?}: manifests differ");
        let digest = m1["output_sha256"].as_str().unwrap_or_default();
        use sha2::Digest;
        let own: String = sha2::Sha256::digest(&out1)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        ensure!(
            digest == own,
            "{args:?}: manifest digest does not match stdout"
        );
    }
    Ok(format!(
        "{} subcommands byte-identical across repeated runs",
        runs.len()
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("construction correctness", criterion_1),
        ("double-counting identity", criterion_2),
        ("counting-bound sanity", criterion_3),
        ("exponent pipeline", criterion_4),
        ("star-count inequality", criterion_5),
        ("two-lift round trip", criterion_6),
        ("randomized construction", criterion_7),
        ("monochromatic expectation", criterion_8),
        ("exact oracles", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.2}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
