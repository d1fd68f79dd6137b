//! Invariant checks behind the `verify` subcommand.

use r1clique::baselines::run_baseline;
use r1clique::oracle::{clique_number, enumerate_maximal_cliques};
use r1clique::solver::{
    d_max, frobenius_objective, gradient, lift_ball_point, md_frobenius_sq, md_matvec, objective_shifted,
    phi_support, refine_at_cap, solve, stationarity_residual, StationarySnapshot,
};
use r1clique::{BaselineConfig, BaselineKind, Graph, OracleLimits, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::HarnessError;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, total: usize) -> Self {
        let detail = match failures.first() {
            None => format!("{total} cases"),
            Some(first) => format!("{}/{total} failed; first: {first}", failures.len()),
        };
        Check {
            name,
            passed: failures.is_empty(),
            detail,
        }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Check {
            name,
            passed: true,
            detail: format!("skipped: {why}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub solver_runs: u64,
    pub gradient_samples: usize,
    pub refine_iterations: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            solver_runs: 5,
            gradient_samples: 10,
            refine_iterations: 200,
        }
    }
}

pub const STATIONARITY_TOL: f64 = 1e-12;
pub const GRADIENT_TOL: f64 = 1e-6;
pub const MOTZKIN_STRAUS_SLACK: f64 = 1e-9;

pub fn maximal_clique_stationarity(g: &Graph) -> Result<Check, HarnessError> {
    let cliques = enumerate_maximal_cliques(g, &OracleLimits::default())?;
    let mut failures = Vec::new();
    let mut total = 0;
    for c in &cliques {
        let u = c.indicator(g.n());
        for d in [g.n() as f64, d_max(g)] {
            total += 1;
            let r = stationarity_residual(g, d, &u)?;
            if !(r < STATIONARITY_TOL) {
                failures.push(format!("clique {:?} at d = {d}: residual {r:e}", c.vertices()));
            }
        }
    }
    Ok(Check::new("maximal-clique stationarity", failures, total))
}

/// Converged solver runs, each followed by refinement at the penalty cap.
/// Returns the rounding check and every near-stationary iterate seen.
fn solver_runs(g: &Graph, opts: &VerifyOptions) -> Result<(Check, Vec<StationarySnapshot>), HarnessError> {
    let mut failures = Vec::new();
    let mut snapshots = Vec::new();
    let mut converged = 0;
    for seed in opts.seed..opts.seed + opts.solver_runs {
        let cfg = SolverConfig::with_seed(seed);
        let r = solve(g, &cfg)?;
        snapshots.extend(r.near_stationary.iter().cloned());
        if !r.converged {
            continue;
        }
        converged += 1;
        if !g.is_maximal_clique(&r.rounded) {
            failures.push(format!("seed {seed}: {:?} is not a maximal clique", r.rounded));
        }
        let mut state = r.final_state.clone();
        snapshots.extend(refine_at_cap(g, &cfg, &mut state, opts.refine_iterations, 1e-13)?);
    }
    Ok((Check::new("rounding soundness", failures, converged), snapshots))
}

pub fn gradient_check(g: &Graph, opts: &VerifyOptions) -> Result<Check, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    let h = 1e-5;
    for k in 0..opts.gradient_samples {
        let d = rng.gen_range(0.0..2.0 * g.n() as f64);
        let u: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(0.1..1.5)).collect();
        let grad = gradient(g, d, &u)?;
        let mut err = 0.0;
        for i in 0..u.len() {
            let (mut p, mut m) = (u.clone(), u.clone());
            p[i] += h;
            m[i] -= h;
            let fd = (objective_shifted(g, d, &p)? - objective_shifted(g, d, &m)?) / (2.0 * h);
            err += (grad[i] - fd).powi(2);
        }
        let scale = grad.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        let rel = err.sqrt() / scale;
        if !(rel < GRADIENT_TOL) {
            failures.push(format!("sample {k} (d = {d:.3}): relative error {rel:e}"));
        }
    }
    Ok(Check::new("gradient finite differences", failures, opts.gradient_samples))
}

/// Nonadjacent pairs in the support of a near-stationary `u` satisfy
/// `u_j < ‖u‖₁/(d+1)`.
pub fn entry_bound(g: &Graph, snapshots: &[StationarySnapshot]) -> Check {
    let mut failures = Vec::new();
    for s in snapshots {
        let l1: f64 = s.u.iter().sum();
        let bound = l1 / (s.d + 1.0);
        'pairs: for i in 0..g.n() {
            for j in 0..g.n() {
                if i != j && !g.has_edge(i, j) && s.u[i] * s.u[j] > 0.0 && !(s.u[j] < bound) {
                    failures.push(format!("iteration {} d = {}: u[{j}] = {} ≥ {bound}", s.iteration, s.d, s.u[j]));
                    break 'pairs;
                }
            }
        }
    }
    Check::new("entry bound", failures, snapshots.len())
}

/// At `d ≥ 2n‖A+I‖_F`, `‖u − 1_Φ(u)‖ < n‖A+I‖_F/(d+1)`.
pub fn rounding_distance_bound(g: &Graph, snapshots: &[StationarySnapshot]) -> Check {
    let cap = d_max(g);
    let b_norm = ((g.n() + 2 * g.edge_count()) as f64).sqrt();
    let mut failures = Vec::new();
    let mut total = 0;
    for s in snapshots.iter().filter(|s| s.d >= cap) {
        total += 1;
        let support = phi_support(&s.u);
        let dist: f64 = s
            .u
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let t = if support.binary_search(&i).is_ok() { 1.0 } else { 0.0 };
                (x - t) * (x - t)
            })
            .sum::<f64>()
            .sqrt();
        let bound = g.n() as f64 * b_norm / (s.d + 1.0);
        if !(dist < bound) {
            failures.push(format!("iteration {}: distance {dist:e} ≥ {bound:e}", s.iteration));
        }
    }
    Check::new("rounding distance bound", failures, total)
}

pub fn motzkin_straus_bound(g: &Graph) -> Result<Check, HarnessError> {
    let omega = clique_number(g, &OracleLimits::default())? as f64;
    let mut failures = Vec::new();
    let r = run_baseline(g, BaselineKind::Pelillo, &BaselineConfig::default())?;
    let value = g.quadratic_form(&r.u);
    let bound = 1.0 - 1.0 / omega + MOTZKIN_STRAUS_SLACK;
    if !(value <= bound) {
        failures.push(format!("uᵀAu = {value} > {bound}"));
    }
    Ok(Check::new("Motzkin-Straus bound", failures, 1))
}

/// `F(√(vᵀM_d v)·v) = ‖M_d‖² − (vᵀM_d v)²` for unit `v ≥ 0` with `vᵀM_d v > 0`.
pub fn lift_identity(g: &Graph, opts: &VerifyOptions) -> Result<Check, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let d = g.n() as f64;
    let mut failures = Vec::new();
    let mut total = 0;
    // uniform points almost always have vᵀM_d v < 0; weight maximal cliques instead
    let cliques = enumerate_maximal_cliques(g, &OracleLimits::default())?;
    let points: Vec<Vec<f64>> = cliques
        .iter()
        .take(opts.gradient_samples)
        .map(|c| {
            (0..g.n())
                .map(|i| if c.contains(i) { rng.gen_range(0.5..1.5) } else { rng.gen_range(0.0..1e-3) })
                .collect()
        })
        .collect();
    for mut v in points {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        let mv = md_matvec(g, d, &v)?;
        let vmv: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
        if vmv <= 0.0 {
            continue;
        }
        total += 1;
        let u = lift_ball_point(g, d, &v)?;
        let lhs = frobenius_objective(g, d, &u)?;
        let rhs = md_frobenius_sq(g, d) - vmv * vmv;
        if (lhs - rhs).abs() > 1e-9 * rhs.abs().max(1.0) {
            failures.push(format!("{lhs} ≠ {rhs}"));
        }
    }
    Ok(Check::new("lift norm identity", failures, total))
}

pub fn run_all(g: &Graph, opts: &VerifyOptions) -> Result<Vec<Check>, HarnessError> {
    let mut checks = vec![maximal_clique_stationarity(g)?];
    if g.edge_count() == 0 {
        for name in ["rounding soundness", "entry bound", "rounding distance bound"] {
            checks.push(Check::skipped(name, "no edges"));
        }
    } else {
        let (rounding, snapshots) = solver_runs(g, opts)?;
        checks.push(rounding);
        checks.push(entry_bound(g, &snapshots));
        checks.push(rounding_distance_bound(g, &snapshots));
    }
    checks.push(gradient_check(g, opts)?);
    if g.edge_count() == 0 {
        checks.push(Check::skipped("Motzkin-Straus bound", "no edges"));
    } else {
        checks.push(motzkin_straus_bound(g)?);
    }
    checks.push(lift_identity(g, opts)?);
    Ok(checks)
}
