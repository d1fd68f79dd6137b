//! Acceptance suite: one PASS/FAIL line per criterion. Reference values
//! (clique numbers, maximal cliques, dense matrices, residuals) are
//! recomputed here by brute force rather than taken from the library.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use r1clique::baselines::{ding_step, pelillo_step, postprocess_greedy, run_baseline, run_baseline_with};
use r1clique::dimacs::{parse_dimacs_str, to_dimacs_string};
use r1clique::solver::{
    frobenius_objective, gradient, md_frobenius_sq, refine_at_cap, solve, stationarity_residual, StationarySnapshot,
};
use r1clique::{BaselineConfig, BaselineKind, Graph, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

// ---- brute-force references ----

fn dense_md(g: &Graph, d: f64) -> Vec<Vec<f64>> {
    let n = g.n();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j || g.has_edge(i, j) { 1.0 } else { -d }).collect())
        .collect()
}

fn dense_frobenius(m: &[Vec<f64>], u: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            total += (x - u[i] * u[j]).powi(2);
        }
    }
    total
}

fn dense_residual(m: &[Vec<f64>], u: &[f64]) -> f64 {
    let sq: f64 = u.iter().map(|x| x * x).sum();
    m.iter()
        .zip(u)
        .map(|(row, ui)| {
            let mu: f64 = row.iter().zip(u).map(|(a, b)| a * b).sum();
            (ui - mu.max(0.0) / sq).abs()
        })
        .fold(0.0, f64::max)
}

fn cap(g: &Graph) -> f64 {
    let n = g.n() as f64;
    2.0 * n * (n + 2.0 * g.edge_count() as f64).sqrt()
}

fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter().enumerate().all(|(k, &a)| s[k + 1..].iter().all(|&b| a != b && g.has_edge(a, b)))
}

fn is_maximal_clique(g: &Graph, s: &[usize]) -> bool {
    !s.is_empty() && is_clique(g, s) && (0..g.n()).all(|v| s.contains(&v) || s.iter().any(|&c| !g.has_edge(c, v)))
}

fn maximal_cliques_exhaustive(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| is_maximal_clique(g, s))
        .collect()
}

fn omega_exhaustive(g: &Graph) -> usize {
    maximal_cliques_exhaustive(g).iter().map(Vec::len).max().unwrap_or(0)
}

fn indicator(n: usize, s: &[usize]) -> Vec<f64> {
    (0..n).map(|i| if s.contains(&i) { 1.0 } else { 0.0 }).collect()
}

fn median(v: &mut [usize]) -> f64 {
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len().is_multiple_of(2) {
        (v[m - 1] + v[m]) as f64 / 2.0
    } else {
        v[m] as f64
    }
}

fn small_graphs(count: u64, seed_base: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| Graph::random(5 + (i % 8) as usize, [0.3, 0.5, 0.7][(i % 3) as usize], seed_base + i).unwrap())
        .collect()
}

// ---- criteria ----

/// Criterion-1 corpus: 500 graphs, n in 5..=30, three densities, three seeds.
fn criterion_1(snapshots: &mut Vec<(Graph, StationarySnapshot)>) -> Outcome {
    let graphs: Vec<Graph> = (0..500u64)
        .map(|i| Graph::random(5 + (i % 26) as usize, [0.2, 0.5, 0.8][(i % 3) as usize], i).unwrap())
        .collect();
    type PerGraph = (usize, usize, Vec<String>, Vec<(Graph, StationarySnapshot)>);
    let per_graph: Vec<PerGraph> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let (mut converged, mut runs, mut bad, mut snaps) = (0, 0, Vec::new(), Vec::new());
            if g.edge_count() == 0 {
                return (0, 0, bad, snaps);
            }
            for seed in 0..3 {
                let cfg = SolverConfig::with_seed(seed);
                let r = solve(g, &cfg).unwrap();
                runs += 1;
                snaps.extend(r.near_stationary.iter().cloned().map(|s| (g.clone(), s)));
                if !r.converged {
                    continue;
                }
                converged += 1;
                if !is_maximal_clique(g, &r.rounded) {
                    bad.push(format!("graph {i} seed {seed}: {:?}", r.rounded));
                }
                let mut state = r.final_state.clone();
                let refined = refine_at_cap(g, &cfg, &mut state, 200, 1e-13).unwrap();
                snaps.extend(refined.into_iter().map(|s| (g.clone(), s)));
            }
            (runs, converged, bad, snaps)
        })
        .collect();
    let (mut runs, mut converged, mut bad) = (0, 0, Vec::new());
    for (r, c, b, s) in per_graph {
        runs += r;
        converged += c;
        bad.extend(b);
        snapshots.extend(s);
    }
    let detail = format!(
        "{}/{converged} converged runs round to maximal cliques ({runs} runs, {} edgeless graphs skipped){}",
        converged - bad.len(),
        graphs.iter().filter(|g| g.edge_count() == 0).count(),
        bad.first().map(|b| format!("; first failure {b}")).unwrap_or_default()
    );
    outcome(bad.is_empty() && converged > 0, detail)
}

fn criterion_2() -> Outcome {
    let graphs = small_graphs(100, 2000);
    let hits: Vec<bool> = graphs
        .par_iter()
        .map(|g| {
            let omega = omega_exhaustive(g);
            if g.edge_count() == 0 {
                return omega == 1;
            }
            let best = (0..20)
                .map(|seed| {
                    let r = solve(g, &SolverConfig::with_seed(seed)).unwrap();
                    if is_clique(g, &r.rounded) { r.rounded.len() } else { 0 }
                })
                .max()
                .unwrap();
            best == omega
        })
        .collect();
    let rate = hits.iter().filter(|&&h| h).count() as f64 / hits.len() as f64;
    outcome(rate >= 0.9, format!("best-of-20 reaches ω on {:.0}% of 100 graphs (need ≥ 90%)", rate * 100.0))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for k in 0..100u64 {
        let n = rng.gen_range(5..=30);
        let g = Graph::random(n, rng.gen_range(0.1..0.9), 3000 + k).unwrap();
        let d = rng.gen_range(0.0..2.0 * n as f64);
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.5)).collect();
        let m = dense_md(&g, d);
        let grad = gradient(&g, d, &u).unwrap();
        let h = 1e-5;
        // gradient of the shifted objective is half that of the Frobenius one
        let fd: Vec<f64> = (0..n)
            .map(|i| {
                let (mut p, mut q) = (u.clone(), u.clone());
                p[i] += h;
                q[i] -= h;
                (dense_frobenius(&m, &p) - dense_frobenius(&m, &q)) / (4.0 * h)
            })
            .collect();
        let err = grad.iter().zip(&fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let rel = err / fd.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        worst = worst.max(rel);
        if !(rel < 1e-6) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{}/100 triples within 1e-6, worst relative error {worst:.2e}", 100 - failures))
}

fn criteria_4_5() -> (Outcome, Outcome) {
    let graphs = small_graphs(50, 4000);
    let (mut checked, mut worst_res, mut res_fail) = (0, 0.0f64, 0);
    let (mut worst_rel, mut val_fail) = (0.0f64, 0);
    for g in &graphs {
        let n = g.n();
        let cliques = maximal_cliques_exhaustive(g);
        let omega = cliques.iter().map(Vec::len).max().unwrap() as f64;
        for d in [n as f64, cap(g)] {
            for c in &cliques {
                checked += 1;
                let r = stationarity_residual(g, d, &indicator(n, c)).unwrap();
                worst_res = worst_res.max(r);
                if !(r < 1e-12) {
                    res_fail += 1;
                }
            }
            let best = cliques.iter().max_by_key(|c| c.len()).unwrap();
            let u = indicator(n, best);
            let m = dense_md(g, d);
            let m_sq: f64 = m.iter().flatten().map(|x| x * x).sum();
            let expected = m_sq - omega * omega;
            let lhs = frobenius_objective(g, d, &u).unwrap();
            let rel = (lhs - expected).abs() / expected.abs();
            let lib_rel = (md_frobenius_sq(g, d) - m_sq).abs() / m_sq;
            worst_rel = worst_rel.max(rel).max(lib_rel);
            if !(rel < 1e-6 && lib_rel < 1e-6) {
                val_fail += 1;
            }
        }
    }
    (
        outcome(
            res_fail == 0,
            format!("{}/{checked} maximal-clique indicators stationary, worst residual {worst_res:.2e}", checked - res_fail),
        ),
        outcome(
            val_fail == 0,
            format!("{}/100 (graph, d) pairs match ‖M_d‖² − ω², worst relative error {worst_rel:.2e}", 100 - val_fail),
        ),
    )
}

fn criterion_6() -> Outcome {
    const REFERENCE: [(f64, f64); 3] = [(0.15, 5.0), (0.50, 10.0), (0.85, 15.0)];
    let mut parts = Vec::new();
    let mut passed = true;
    for (density, reference) in REFERENCE {
        let sizes: Vec<(usize, usize)> = (0..10u64)
            .into_par_iter()
            .map(|t| {
                let g = Graph::random(400, density, t).unwrap();
                let r = solve(&g, &SolverConfig::with_seed(t)).unwrap();
                let ours = if is_clique(&g, &r.rounded) { r.rounded.len() } else { 0 };
                let run = run_baseline(&g, BaselineKind::Pelillo, &BaselineConfig::default()).unwrap();
                let c = postprocess_greedy(&g, &run.u);
                let theirs = if is_clique(&g, c.vertices()) { c.size() } else { 0 };
                (ours, theirs)
            })
            .collect();
        let mut ours: Vec<usize> = sizes.iter().map(|s| s.0).collect();
        let mut theirs: Vec<usize> = sizes.iter().map(|s| s.1).collect();
        let (mo, mt) = (median(&mut ours), median(&mut theirs));
        let near_reference = mo >= reference - 2.0;
        let beats = density < 0.5 || mo >= mt;
        passed &= near_reference && beats;
        parts.push(format!(
            "p={density}: median {mo} (reference {reference}, {}) vs replicator {mt}{}",
            if near_reference { "ok" } else { "low" },
            if density < 0.5 { "" } else if beats { " ok" } else { " BELOW" }
        ));
    }
    outcome(passed, parts.join("; "))
}

fn hamming_graph(bits: u32, min_distance: u32) -> Graph {
    let n = 1usize << bits;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .filter(|&(a, b)| ((a ^ b) as u32).count_ones() >= min_distance)
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn dimacs_fixture(name: &str) -> Option<Graph> {
    let dirs = [
        std::env::var("R1CLIQUE_DIMACS_DIR").ok(),
        Some(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/dimacs").to_string()),
    ];
    dirs.into_iter().flatten().find_map(|d| {
        let text = std::fs::read_to_string(std::path::Path::new(&d).join(format!("{name}.clq"))).ok()?;
        parse_dimacs_str(&text).ok()
    })
}

fn timed_solve(g: &Graph, seed: u64) -> (usize, Duration) {
    let started = Instant::now();
    let r = solve(g, &SolverConfig::with_seed(seed)).unwrap();
    let size = if is_clique(g, &r.rounded) { r.rounded.len() } else { 0 };
    (size, started.elapsed())
}

fn criterion_7() -> Outcome {
    let ceiling = Duration::from_secs(30);
    let mut parts = Vec::new();
    let mut passed = true;

    // hamming10_2 is fully determined by its definition, so it is rebuilt and
    // round-tripped through the DIMACS reader instead of fetched.
    let g = parse_dimacs_str(&to_dimacs_string(&hamming_graph(10, 2))).unwrap();
    let (size, t) = timed_solve(&g, 0);
    let ok = g.edge_count() == 518_656 && size == 512 && t < ceiling;
    passed &= ok;
    parts.push(format!("hamming10_2 {size} in {:.2}s (want 512)", t.as_secs_f64()));

    for (name, want, exact) in [("brock200_1", 17, false), ("p_hat1000-1", 10, true)] {
        match dimacs_fixture(name) {
            None => parts.push(format!("{name} skipped (fixture absent)")),
            Some(g) => {
                let runs: Vec<(usize, Duration)> = (0..5).map(|s| timed_solve(&g, s)).collect();
                let best = runs.iter().map(|r| r.0).max().unwrap();
                let slowest = runs.iter().map(|r| r.1).max().unwrap();
                let ok = (if exact { best == want } else { best >= want }) && slowest < ceiling;
                passed &= ok;
                parts.push(format!("{name} best-of-5 {best} (want {}{want})", if exact { "" } else { "≥ " }));
            }
        }
    }
    outcome(passed, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut simplex, mut monotone, mut eta_mass) = (0, 0, 0);
    let mut tested = 0;
    for k in 0..100u64 {
        let g = Graph::random(rng.gen_range(5..=40), rng.gen_range(0.1..0.9), 8000 + k).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        tested += 1;
        let raw: Vec<f64> = (0..g.n()).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let mut u: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let (mut s_ok, mut m_ok) = (true, true);
        for _ in 0..50 {
            let next = pelillo_step(&g, &u).unwrap();
            s_ok &= (next.iter().sum::<f64>() - 1.0).abs() < 1e-12 && next.iter().all(|&x| x >= 0.0);
            m_ok &= g.quadratic_form(&next) >= g.quadratic_form(&u) - 1e-12;
            u = next;
        }
        simplex += s_ok as usize;
        monotone += m_ok as usize;

        let eta = rng.gen_range(1.0..=2.0);
        let mut v: Vec<f64> = raw.iter().map(|x| x / raw.iter().map(|y| y.powf(eta)).sum::<f64>().powf(1.0 / eta)).collect();
        let mut e_ok = true;
        for _ in 0..50 {
            v = ding_step(&g, &v, eta).unwrap();
            e_ok &= (v.iter().map(|x| x.powf(eta)).sum::<f64>() - 1.0).abs() < 1e-12;
        }
        eta_mass += e_ok as usize;
    }

    let mut ms_ok = 0;
    let small = small_graphs(100, 2000);
    let with_edges: Vec<&Graph> = small.iter().filter(|g| g.edge_count() > 0).collect();
    for g in &with_edges {
        let bound = 1.0 - 1.0 / omega_exhaustive(g) as f64 + 1e-9;
        let mut ok = true;
        run_baseline_with(g, BaselineKind::Pelillo, &BaselineConfig::default(), |u| {
            ok &= g.quadratic_form(u) <= bound;
        })
        .unwrap();
        ms_ok += ok as usize;
    }
    let passed = simplex == tested && monotone == tested && eta_mass == tested && ms_ok == with_edges.len();
    outcome(
        passed,
        format!(
            "simplex {simplex}/{tested}, monotone {monotone}/{tested}, η-mass {eta_mass}/{tested}, Motzkin-Straus bound {ms_ok}/{}",
            with_edges.len()
        ),
    )
}

fn criterion_9(snapshots: &[(Graph, StationarySnapshot)]) -> Outcome {
    let (mut lemma_fail, mut dist_fail, mut at_cap, mut residual_fail) = (0, 0, 0, 0);
    for (g, s) in snapshots {
        let n = g.n();
        let m = dense_md(g, s.d);
        if !(dense_residual(&m, &s.u) < 1e-8) {
            residual_fail += 1;
        }
        let l1: f64 = s.u.iter().sum();
        let violated = (0..n).any(|i| {
            (0..n).any(|j| i != j && !g.has_edge(i, j) && s.u[i] * s.u[j] > 0.0 && !(s.u[j] < l1 / (s.d + 1.0)))
        });
        lemma_fail += violated as usize;
        if s.d >= cap(g) * (1.0 - 1e-12) {
            at_cap += 1;
            let target: Vec<f64> = s.u.iter().map(|&x| if x > 0.5 { 1.0 } else { 0.0 }).collect();
            let dist = s.u.iter().zip(&target).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            let b_norm = ((n + 2 * g.edge_count()) as f64).sqrt();
            if !(dist < n as f64 * b_norm / (s.d + 1.0)) {
                dist_fail += 1;
            }
        }
    }
    let total = snapshots.len();
    outcome(
        total > 0 && at_cap > 0 && lemma_fail == 0 && dist_fail == 0 && residual_fail == 0,
        format!(
            "entry bound {}/{total}, distance bound {}/{at_cap} at d ≥ D, residual < 1e-8 confirmed {}/{total}",
            total - lemma_fail,
            at_cap - dist_fail,
            total - residual_fail
        ),
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |id: u32, ceiling_s: f64, run: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let o = run();
        let secs = started.elapsed().as_secs_f64();
        let passed = o.passed && secs < ceiling_s;
        all &= passed;
        println!(
            "criterion {id}: {} ({}; {secs:.1}s, ceiling {ceiling_s}s)",
            if passed { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    let mut snapshots = Vec::new();
    report(1, 60.0, &mut || criterion_1(&mut snapshots));
    report(2, 120.0, &mut criterion_2);
    report(3, 10.0, &mut criterion_3);
    let mut c5 = None;
    report(4, 30.0, &mut || {
        let (c4, v) = criteria_4_5();
        c5 = Some(v);
        c4
    });
    report(5, 30.0, &mut || {
        let v = c5.take().unwrap();
        outcome(v.passed, format!("{}, timed with criterion 4", v.detail))
    });
    report(6, 600.0, &mut criterion_6);
    report(7, 300.0, &mut criterion_7);
    report(8, 60.0, &mut criterion_8);
    report(9, 60.0, &mut || criterion_9(&snapshots));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
