//! Projected gradient with an adaptive Armijo step on
//! `min_{u ≥ 0} ‖M_d − uuᵀ‖²_F`, increasing the penalty `d` geometrically up
//! to `D = 2n‖A + I‖_F` and rounding the near-binary limit to a clique.

mod objective;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use objective::{
    ball_objective, d_max, default_d0, frobenius_objective, gradient, lift_ball_point, md_frobenius_sq,
    md_matvec, objective_shifted, phi_support, project_nonneg, round_phi, stationarity_residual,
};
use objective::Parts;

use crate::clique::CliqueSet;
use crate::error::SolverError;
use crate::graph::Graph;

/// Lower clamp on the step, relative to the initial step.
pub const ALPHA_FLOOR_FACTOR: f64 = 1e-12;

/// Iterates at or below this stationarity residual are kept as snapshots
/// when tracing is on.
pub const SNAPSHOT_RESIDUAL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Penalty growth factor per outer iteration.
    pub gamma: f64,
    /// Armijo sufficient-decrease parameter.
    pub sigma: f64,
    /// Step shrink factor; successful steps grow by `1/√beta`.
    pub beta: f64,
    pub max_armijo_trials: usize,
    pub d0_override: Option<f64>,
    /// Caps `d` below the default `2n‖B‖_F`. Small values favor dense
    /// subgraphs over cliques; no guarantee that the rounding is a clique.
    pub d_max_override: Option<f64>,
    pub binary_tol_low: f64,
    pub binary_tol_high: (f64, f64),
    pub max_outer_iterations: usize,
    pub alpha_cap_factor: f64,
    pub seed: u64,
    /// Record per-iteration diagnostics and near-stationary snapshots.
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gamma: 1.1,
            sigma: 0.01,
            beta: 0.5,
            max_armijo_trials: 5,
            d0_override: None,
            d_max_override: None,
            binary_tol_low: 1e-3,
            binary_tol_high: (0.999, 1.001),
            max_outer_iterations: 10_000,
            alpha_cap_factor: 1e6,
            seed: 0,
            record_trace: false,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: &str| Err(SolverError::InvalidConfig(msg.to_string()));
        if !(self.gamma > 1.0) {
            return bad("gamma must exceed 1");
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return bad("sigma must lie in (0, 1)");
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad("beta must lie in (0, 1)");
        }
        if self.max_armijo_trials == 0 {
            return bad("max_armijo_trials must be at least 1");
        }
        if let Some(d0) = self.d0_override {
            if !(d0 >= 0.0 && d0.is_finite()) {
                return bad("d0 must be finite and nonnegative");
            }
        }
        if let Some(dm) = self.d_max_override {
            if !(dm > 0.0 && dm.is_finite()) {
                return bad("d_max must be finite and positive");
            }
        }
        if !(self.alpha_cap_factor >= 1.0) {
            return bad("alpha_cap_factor must be at least 1");
        }
        let (lo, hi) = self.binary_tol_high;
        if !(self.binary_tol_low >= 0.0 && self.binary_tol_low < 0.5 && lo > 0.5 && lo <= hi) {
            return bad("binary tolerances must bracket 0 and 1 without crossing 0.5");
        }
        Ok(())
    }

    /// Final penalty `D` for `g`.
    pub fn penalty_cap(&self, g: &Graph) -> f64 {
        self.d_max_override.unwrap_or_else(|| d_max(g))
    }

    /// Every entry within `[0, low]` or `[hi.0, hi.1]`.
    pub fn is_binary(&self, u: &[f64]) -> bool {
        let (lo, hi) = self.binary_tol_high;
        u.iter()
            .all(|&x| (0.0..=self.binary_tol_low).contains(&x) || (lo..=hi).contains(&x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub u: Vec<f64>,
    pub d: f64,
    pub alpha: f64,
    /// `α₀`; the step is clamped relative to it.
    pub alpha_initial: f64,
    pub iteration: usize,
}

impl SolverState {
    /// State at `u` with penalty `d`, taking `α₀ = 0.1‖u‖/‖∇F(u)‖`.
    pub fn start(g: &Graph, u: Vec<f64>, d: f64) -> Result<Self, SolverError> {
        let grad = gradient(g, d, &u)?;
        let gnorm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
        let unorm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let alpha = if gnorm > 0.0 && unorm > 0.0 && (unorm / gnorm).is_finite() {
            0.1 * unorm / gnorm
        } else {
            0.1
        };
        Ok(Self {
            u,
            d,
            alpha,
            alpha_initial: alpha,
            iteration: 0,
        })
    }
}

/// What one outer iteration did.
#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub iteration: usize,
    /// Penalty the step was taken at (before the schedule advanced).
    pub d: f64,
    pub trials: usize,
    pub accepted: bool,
    /// Step length of the last candidate.
    pub alpha_used: f64,
    pub objective_before: f64,
    pub objective_after: f64,
    /// `Fn − Fo`, evaluated in difference form.
    pub change: f64,
    /// `∇F(u)ᵀ(u_n − u)` for the last candidate.
    pub directional: f64,
}

impl StepReport {
    /// Sufficient-decrease inequality `Fn − Fo ≤ σ∇F(u)ᵀ(u_n − u)`.
    pub fn satisfies_armijo(&self, sigma: f64) -> bool {
        self.change <= sigma * self.directional
    }
}

fn non_finite(state: &SolverState) -> SolverError {
    SolverError::NonFinite {
        iteration: state.iteration,
        d: state.d,
        u: state.u.clone(),
    }
}

/// One outer iteration: at most `max_armijo_trials` projected steps at the
/// current `d`, shrinking the step after each failure and growing it after a
/// success. The last candidate always replaces `u` (even if no trial passed),
/// then `d ← min(γd, D)`.
pub fn armijo_outer_iteration(g: &Graph, cfg: &SolverConfig, state: &mut SolverState) -> Result<StepReport, SolverError> {
    if state.u.len() != g.n() {
        return Err(SolverError::DimensionMismatch {
            expected: g.n(),
            got: state.u.len(),
        });
    }
    let d = state.d;
    let parts = Parts::new(g, &state.u);
    let f_old = parts.objective(d);
    let grad = parts.gradient(&state.u, d);
    if !f_old.is_finite() || grad.iter().any(|x| !x.is_finite()) {
        return Err(non_finite(state));
    }

    let floor = ALPHA_FLOOR_FACTOR * state.alpha_initial;
    let cap = cfg.alpha_cap_factor * state.alpha_initial;
    let mut candidate = Vec::new();
    let mut f_new = f64::NAN;
    let mut change = f64::NAN;
    let mut directional = 0.0;
    let mut alpha_used = state.alpha;
    let mut accepted = false;
    let mut trials = 0;

    while trials < cfg.max_armijo_trials {
        trials += 1;
        alpha_used = state.alpha;
        candidate = state
            .u
            .iter()
            .zip(&grad)
            .map(|(&x, &gx)| (x - state.alpha * gx).max(0.0))
            .collect();
        let next = Parts::new(g, &candidate);
        f_new = next.objective(d);
        change = parts.objective_change(&next, &state.u, &candidate, d);
        directional = grad
            .iter()
            .zip(candidate.iter().zip(&state.u))
            .map(|(gx, (c, x))| gx * (c - x))
            .sum();
        if f_new.is_finite() && change <= cfg.sigma * directional {
            state.alpha = (state.alpha / cfg.beta.sqrt()).clamp(floor, cap);
            accepted = true;
            break;
        }
        state.alpha = (state.alpha * cfg.beta).clamp(floor, cap);
    }

    if !f_new.is_finite() {
        return Err(non_finite(state));
    }
    state.u = candidate;
    state.d = (cfg.gamma * d).min(cfg.penalty_cap(g));
    state.iteration += 1;

    Ok(StepReport {
        iteration: state.iteration,
        d,
        trials,
        accepted,
        alpha_used,
        objective_before: f_old,
        objective_after: f_new,
        change,
        directional,
    })
}

/// Per-iteration diagnostics kept when [`SolverConfig::record_trace`] is set.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub step: StepReport,
    /// Stationarity residual of the new iterate at the step's `d`; `None`
    /// when the iterate is zero.
    pub residual: Option<f64>,
}

/// An iterate whose residual was at most [`SNAPSHOT_RESIDUAL`].
#[derive(Clone, Debug, PartialEq)]
pub struct StationarySnapshot {
    pub iteration: usize,
    pub d: f64,
    pub residual: f64,
    pub u: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    pub u_final: Vec<f64>,
    /// Vertices of the Φ rounding of `u_final`, whether or not they form a clique.
    pub rounded: Vec<usize>,
    /// The rounding, if it is a clique.
    pub clique: Option<CliqueSet>,
    /// Rounding is a clique not contained in a larger one.
    pub maximal: bool,
    /// Stopped on the near-binary criterion rather than the iteration cap.
    pub converged: bool,
    pub iterations: usize,
    /// Shifted objective of each new iterate, at that iteration's `d`.
    pub objective_trace: Vec<f64>,
    /// Residual at `d = D`; `None` if `u_final = 0`.
    pub stationarity_residual_final: Option<f64>,
    pub wall_time_ms: f64,
    pub final_state: SolverState,
    pub trace: Vec<IterationRecord>,
    pub near_stationary: Vec<StationarySnapshot>,
}

impl SolverResult {
    pub fn clique_size(&self) -> usize {
        self.clique.as_ref().map_or(0, CliqueSet::size)
    }
}

fn is_zero(u: &[f64]) -> bool {
    u.iter().all(|&x| x == 0.0)
}

/// Runs the full schedule from a seeded uniform(0,1) start.
///
/// Stops once every entry is near 0 or near 1 (and at least one is near 1),
/// or after `max_outer_iterations`. The zero vector is a trivial stationary
/// point the iteration cannot leave, so reaching it ends the run unconverged.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> Result<SolverResult, SolverError> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(SolverError::NoEdges);
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let u0: Vec<f64> = (0..g.n()).map(|_| rng.gen::<f64>()).collect();
    let cap = cfg.penalty_cap(g);
    let d0 = cfg.d0_override.unwrap_or_else(|| default_d0(g)).min(cap);
    solve_from(g, cfg, SolverState::start(g, u0, d0)?, started)
}

/// Runs the schedule from an explicit state.
pub fn solve_from_state(g: &Graph, cfg: &SolverConfig, state: SolverState) -> Result<SolverResult, SolverError> {
    cfg.validate()?;
    solve_from(g, cfg, state, Instant::now())
}

fn solve_from(g: &Graph, cfg: &SolverConfig, mut state: SolverState, started: Instant) -> Result<SolverResult, SolverError> {
    let cap = cfg.penalty_cap(g);
    let mut objective_trace = Vec::new();
    let mut trace = Vec::new();
    let mut near_stationary = Vec::new();
    let mut converged = false;

    loop {
        if is_zero(&state.u) {
            break;
        }
        let (lo, hi) = cfg.binary_tol_high;
        if cfg.is_binary(&state.u) && state.u.iter().any(|&x| (lo..=hi).contains(&x)) {
            converged = true;
            break;
        }
        if state.iteration >= cfg.max_outer_iterations {
            break;
        }
        let step = armijo_outer_iteration(g, cfg, &mut state)?;
        objective_trace.push(step.objective_after);
        if cfg.record_trace {
            let residual = if is_zero(&state.u) {
                None
            } else {
                Some(stationarity_residual(g, step.d, &state.u)?)
            };
            if let Some(r) = residual.filter(|&r| r <= SNAPSHOT_RESIDUAL) {
                near_stationary.push(StationarySnapshot {
                    iteration: step.iteration,
                    d: step.d,
                    residual: r,
                    u: state.u.clone(),
                });
            }
            trace.push(IterationRecord { step, residual });
        }
    }

    let rounded = phi_support(&state.u);
    let clique = CliqueSet::new(g, rounded.clone()).ok();
    let maximal = clique.as_ref().is_some_and(|c| c.is_maximal_in(g));
    let stationarity_residual_final = if is_zero(&state.u) {
        None
    } else {
        Some(stationarity_residual(g, cap, &state.u)?)
    };
    if converged && !maximal {
        log::warn!(
            "converged at iteration {} (d = {}) but the rounding is not a maximal clique",
            state.iteration,
            state.d
        );
    }

    Ok(SolverResult {
        u_final: state.u.clone(),
        rounded,
        clique,
        maximal,
        converged,
        iterations: state.iteration,
        objective_trace,
        stationarity_residual_final,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        final_state: state,
        trace,
        near_stationary,
    })
}

/// Continues outer iterations from `state` with `d` pinned at the cap `D`,
/// keeping every iterate whose residual is at most [`SNAPSHOT_RESIDUAL`].
/// Stops after `max_iterations` or once the residual falls below `stop_below`.
pub fn refine_at_cap(
    g: &Graph,
    cfg: &SolverConfig,
    state: &mut SolverState,
    max_iterations: usize,
    stop_below: f64,
) -> Result<Vec<StationarySnapshot>, SolverError> {
    state.d = cfg.penalty_cap(g);
    let mut snapshots = Vec::new();
    for _ in 0..max_iterations {
        let step = armijo_outer_iteration(g, cfg, state)?;
        if is_zero(&state.u) {
            break;
        }
        let residual = stationarity_residual(g, step.d, &state.u)?;
        if residual <= SNAPSHOT_RESIDUAL {
            snapshots.push(StationarySnapshot {
                iteration: step.iteration,
                d: step.d,
                residual,
                u: state.u.clone(),
            });
        }
        if residual < stop_below {
            break;
        }
    }
    Ok(snapshots)
}
