//! Objective, gradient and optimality quantities for
//! `min_{u ≥ 0} ‖M_d − uuᵀ‖²_F`, with `M_d = (1+d)(A + I) − d·11ᵀ`.
//!
//! `M_d` is dense even when `A` is sparse, so it is never built. Every
//! product goes through one adjacency pass plus O(n) corrections.

use crate::error::SolverError;
use crate::graph::Graph;

fn check_len(g: &Graph, u: &[f64]) -> Result<(), SolverError> {
    if u.len() != g.n() {
        return Err(SolverError::DimensionMismatch {
            expected: g.n(),
            got: u.len(),
        });
    }
    Ok(())
}

/// Initial penalty balancing the positive and negative mass of `M_d`:
/// `‖B‖²_F / (n² − ‖B‖²_F)`. Zero for complete graphs, which have no `−d`
/// entries.
pub fn default_d0(g: &Graph) -> f64 {
    let n = g.n() as f64;
    let nnz = g.nnz_b() as f64;
    let negatives = n * n - nnz;
    if negatives <= 0.0 {
        0.0
    } else {
        nnz / negatives
    }
}

/// `D = 2n‖B‖_F`, the penalty beyond which stationary points round to cliques.
pub fn d_max(g: &Graph) -> f64 {
    2.0 * g.n() as f64 * (g.nnz_b() as f64).sqrt()
}

/// `‖M_d‖²_F = nnz(B) + d²(n² − nnz(B))`.
pub fn md_frobenius_sq(g: &Graph, d: f64) -> f64 {
    let n = g.n() as f64;
    let nnz = g.nnz_b() as f64;
    nnz + d * d * (n * n - nnz)
}

/// Shared scalar pieces of one evaluation at `u`.
pub(crate) struct Parts {
    pub au: Vec<f64>,
    pub sum: f64,
    pub sq_norm: f64,
    pub uau: f64,
}

impl Parts {
    pub(crate) fn new(g: &Graph, u: &[f64]) -> Self {
        let mut au = vec![0.0; u.len()];
        g.adjacency_matvec(u, &mut au);
        let uau = u.iter().zip(&au).map(|(a, b)| a * b).sum();
        Self {
            au,
            sum: u.iter().sum(),
            sq_norm: u.iter().map(|x| x * x).sum(),
            uau,
        }
    }

    pub(crate) fn objective(&self, d: f64) -> f64 {
        -(1.0 + d) * self.uau - (1.0 + d) * self.sq_norm
            + d * self.sum * self.sum
            + 0.5 * self.sq_norm * self.sq_norm
    }

    /// `F(un) − F(u)` in difference form, where `self` is at `u` and `next`
    /// at `un`. Avoids the cancellation of subtracting two objectives that are
    /// each dominated by `d(Σu)²`.
    pub(crate) fn objective_change(&self, next: &Parts, u: &[f64], un: &[f64], d: f64) -> f64 {
        let mut dq = 0.0;
        let mut dn2 = 0.0;
        for i in 0..u.len() {
            let delta = un[i] - u[i];
            dq += delta * (next.au[i] + self.au[i]);
            dn2 += delta * (un[i] + u[i]);
        }
        let dsum = un.iter().zip(u).map(|(a, b)| a - b).sum::<f64>();
        let dsum2 = dsum * (next.sum + self.sum);
        let d4 = dn2 * (next.sq_norm + self.sq_norm);
        -(1.0 + d) * dq - (1.0 + d) * dn2 + d * dsum2 + 0.5 * d4
    }

    pub(crate) fn md_product(&self, u: &[f64], d: f64) -> Vec<f64> {
        let shift = d * self.sum;
        self.au
            .iter()
            .zip(u)
            .map(|(&a, &x)| (1.0 + d) * (a + x) - shift)
            .collect()
    }

    pub(crate) fn gradient(&self, u: &[f64], d: f64) -> Vec<f64> {
        let mu = self.md_product(u, d);
        u.iter()
            .zip(mu)
            .map(|(&x, m)| 2.0 * (self.sq_norm * x - m))
            .collect()
    }
}

/// `M_d u = (1+d)(Au + u) − d(Σu)·1`.
pub fn md_matvec(g: &Graph, d: f64, u: &[f64]) -> Result<Vec<f64>, SolverError> {
    check_len(g, u)?;
    Ok(Parts::new(g, u).md_product(u, d))
}

/// `−uᵀM_d u + ½‖u‖⁴`, which is `½(‖M_d − uuᵀ‖²_F − ‖M_d‖²_F)`.
pub fn objective_shifted(g: &Graph, d: f64, u: &[f64]) -> Result<f64, SolverError> {
    check_len(g, u)?;
    Ok(Parts::new(g, u).objective(d))
}

/// `‖M_d − uuᵀ‖²_F` recovered from the shifted objective.
pub fn frobenius_objective(g: &Graph, d: f64, u: &[f64]) -> Result<f64, SolverError> {
    Ok(2.0 * objective_shifted(g, d, u)? + md_frobenius_sq(g, d))
}

/// Exact gradient of [`objective_shifted`]: `2(‖u‖²u − M_d u)`.
///
/// Note this carries a `−2d·u` term relative to the expanded form
/// `2[u(‖u‖²−1) − (1+d)Au + d·1‖u‖₁]` sometimes quoted for this objective;
/// the expanded form is not the derivative of the objective above.
pub fn gradient(g: &Graph, d: f64, u: &[f64]) -> Result<Vec<f64>, SolverError> {
    check_len(g, u)?;
    Ok(Parts::new(g, u).gradient(u, d))
}

pub fn project_nonneg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| x.max(0.0)).collect()
}

/// Φ rounding: `u_i > 0.5` maps to 1, everything else (including 0.5) to 0.
pub fn round_phi(u: &[f64]) -> Vec<bool> {
    u.iter().map(|&x| x > 0.5).collect()
}

/// Vertices selected by [`round_phi`].
pub fn phi_support(u: &[f64]) -> Vec<usize> {
    u.iter()
        .enumerate()
        .filter_map(|(i, &x)| (x > 0.5).then_some(i))
        .collect()
}

/// `‖u − [M_d u]₊ / ‖u‖²‖_∞`; zero exactly at nontrivial stationary points.
pub fn stationarity_residual(g: &Graph, d: f64, u: &[f64]) -> Result<f64, SolverError> {
    check_len(g, u)?;
    let parts = Parts::new(g, u);
    if parts.sq_norm == 0.0 {
        return Err(SolverError::ZeroVector);
    }
    let mu = parts.md_product(u, d);
    Ok(u.iter()
        .zip(mu)
        .map(|(&x, m)| (x - m.max(0.0) / parts.sq_norm).abs())
        .fold(0.0, f64::max))
}

/// `vᵀM_d v`.
pub fn ball_objective(g: &Graph, d: f64, v: &[f64]) -> Result<f64, SolverError> {
    check_len(g, v)?;
    let p = Parts::new(g, v);
    Ok((1.0 + d) * (p.uau + p.sq_norm) - d * p.sum * p.sum)
}

/// Maps a point `v` of the nonnegative unit ball to `u = (vᵀM_d v)^{1/2} v`.
/// Stationary `v` with positive value map to nontrivial stationary `u`, and
/// then `‖M_d − uuᵀ‖²_F = ‖M_d‖²_F − (vᵀM_d v)²`.
pub fn lift_ball_point(g: &Graph, d: f64, v: &[f64]) -> Result<Vec<f64>, SolverError> {
    check_len(g, v)?;
    if v.iter().any(|&x| x < 0.0) {
        return Err(SolverError::InvalidInput("v has a negative entry".into()));
    }
    let norm_sq: f64 = v.iter().map(|x| x * x).sum();
    if norm_sq > 1.0 + 1e-12 {
        return Err(SolverError::InvalidInput(format!("‖v‖² = {norm_sq} exceeds 1")));
    }
    let value = ball_objective(g, d, v)?;
    if value <= 0.0 || !value.is_finite() {
        return Err(SolverError::NonPositiveCurvature(value));
    }
    let scale = value.sqrt();
    Ok(v.iter().map(|&x| scale * x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::from_edge_list(2, &[(0, 1)]).unwrap()
    }
    fn k3() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }
    fn star5() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    /// Dense `M_d` built entry by entry from the definition.
    fn dense_md(g: &Graph, d: f64) -> Vec<Vec<f64>> {
        let n = g.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j || g.has_edge(i, j) { 1.0 } else { -d })
                    .collect()
            })
            .collect()
    }

    fn dense_frobenius(g: &Graph, d: f64, u: &[f64]) -> f64 {
        let m = dense_md(g, d);
        let mut s = 0.0;
        for i in 0..g.n() {
            for j in 0..g.n() {
                let r = m[i][j] - u[i] * u[j];
                s += r * r;
            }
        }
        s
    }

    #[test]
    fn d0_values() {
        assert!((default_d0(&star5()) - 13.0 / 12.0).abs() < 1e-15);
        assert_eq!(default_d0(&k3()), 0.0);
        assert!((default_d0(&Graph::empty(4)) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dmax_values() {
        assert_eq!(d_max(&k2()), 8.0);
        assert!((d_max(&star5()) - 10.0 * 13f64.sqrt()).abs() < 1e-12);
        assert!((d_max(&star5()) - 36.0555).abs() < 1e-4);
        assert_eq!(d_max(&Graph::empty(0)), 0.0);
    }

    #[test]
    fn matvec_examples() {
        assert_eq!(md_matvec(&k3(), 0.0, &[1.0; 3]).unwrap(), vec![3.0; 3]);
        let e0 = [1.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(md_matvec(&star5(), 2.0, &e0).unwrap(), vec![1.0; 5]);
        let dense = dense_md(&star5(), 2.0);
        let col0: Vec<f64> = dense.iter().map(|row| row[0]).collect();
        assert_eq!(col0, vec![1.0; 5]);
        assert_eq!(md_matvec(&star5(), 7.0, &[0.0; 5]).unwrap(), vec![0.0; 5]);
        assert!(matches!(
            md_matvec(&k3(), 1.0, &[1.0]),
            Err(SolverError::DimensionMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn objective_examples() {
        for d in [0.0, 1.0, 17.0] {
            assert_eq!(objective_shifted(&k2(), d, &[1.0, 1.0]).unwrap(), -2.0);
            assert!(frobenius_objective(&k2(), d, &[1.0, 1.0]).unwrap().abs() < 1e-12);
        }
        assert_eq!(objective_shifted(&star5(), 3.0, &[0.0; 5]).unwrap(), 0.0);

        let u = [1.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(objective_shifted(&star5(), 5.0, &u).unwrap(), -4.0 + 2.0);
        // 2·(−2) + 13 + 25·12
        assert_eq!(frobenius_objective(&star5(), 5.0, &u).unwrap(), 309.0);
        assert_eq!(dense_frobenius(&star5(), 5.0, &u), 309.0);
    }

    #[test]
    fn gradient_examples() {
        for d in [0.0, 2.5] {
            assert_eq!(gradient(&k2(), d, &[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
        }
        assert_eq!(gradient(&star5(), 4.0, &[0.0; 5]).unwrap(), vec![0.0; 5]);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let g = star5();
        let d = 3.0;
        let u = [0.5, 0.4, 0.3, 0.2, 0.1];
        let grad = gradient(&g, d, &u).unwrap();
        let h = 1e-6;
        for i in 0..5 {
            let mut up = u;
            let mut dn = u;
            up[i] += h;
            dn[i] -= h;
            let fd = (objective_shifted(&g, d, &up).unwrap() - objective_shifted(&g, d, &dn).unwrap())
                / (2.0 * h);
            let rel = (fd - grad[i]).abs() / grad[i].abs().max(1e-12);
            assert!(rel < 1e-6, "coord {i}: fd {fd} vs {}", grad[i]);
        }
    }

    #[test]
    fn printed_expanded_gradient_differs_by_d_u() {
        let g = star5();
        let d = 3.0;
        let u = [0.5, 0.4, 0.3, 0.2, 0.1];
        let grad = gradient(&g, d, &u).unwrap();
        let sq: f64 = u.iter().map(|x| x * x).sum();
        let l1: f64 = u.iter().sum();
        let mut au = vec![0.0; 5];
        g.adjacency_matvec(&u, &mut au);
        for i in 0..5 {
            let printed = 2.0 * (u[i] * (sq - 1.0) - (1.0 + d) * au[i] + d * l1);
            assert!((grad[i] - (printed - 2.0 * d * u[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_and_rounding() {
        assert_eq!(project_nonneg(&[-1.0, 0.5, 0.0]), vec![0.0, 0.5, 0.0]);
        assert_eq!(project_nonneg(&[0.1, 2.0]), vec![0.1, 2.0]);
        assert_eq!(project_nonneg(&[-0.1, -2.0]), vec![0.0, 0.0]);
        assert_eq!(round_phi(&[0.3, 0.7]), vec![false, true]);
        assert_eq!(round_phi(&[0.5]), vec![false]);
        assert_eq!(round_phi(&[1.0001, 0.0003]), vec![true, false]);
        assert_eq!(phi_support(&[1.0001, 0.0003, 0.9]), vec![0, 2]);
    }

    #[test]
    fn residual_examples() {
        for d in [3.0, 10.0] {
            assert_eq!(stationarity_residual(&k3(), d, &[1.0; 3]).unwrap(), 0.0);
        }
        let u = [1.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(stationarity_residual(&star5(), 5.0, &u).unwrap(), 0.0);
        assert!(stationarity_residual(&k3(), 3.0, &[1.0, 1.0, 0.5]).unwrap() > 0.0);
        assert_eq!(stationarity_residual(&k3(), 3.0, &[0.0; 3]), Err(SolverError::ZeroVector));
    }

    #[test]
    fn lift_examples() {
        let s = 1.0 / 3f64.sqrt();
        let u = lift_ball_point(&k3(), 0.0, &[s, s, s]).unwrap();
        for x in u {
            assert!((x - 1.0).abs() < 1e-15);
        }
        assert_eq!(lift_ball_point(&k2(), 4.0, &[1.0, 0.0]).unwrap(), vec![1.0, 0.0]);

        let g = star5();
        let d = 5.0;
        let r = 1.0 / 2f64.sqrt();
        let v = [r, r, 0.0, 0.0, 0.0];
        let u = lift_ball_point(&g, d, &v).unwrap();
        for (a, b) in u.iter().zip([1.0, 1.0, 0.0, 0.0, 0.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let value = ball_objective(&g, d, &v).unwrap();
        let dense: f64 = dense_md(&g, d)
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, m)| v[i] * m * v[j]).sum::<f64>())
            .sum();
        assert!((value - dense).abs() < 1e-12);
        let lhs = dense_frobenius(&g, d, &u);
        let rhs = md_frobenius_sq(&g, d) - value * value;
        assert!((lhs - rhs).abs() < 1e-9 * rhs.abs());

        // leaves 1 and 2 are not adjacent: vᵀM_d v = 1 − d < 0
        assert!(matches!(
            lift_ball_point(&g, d, &[0.0, r, r, 0.0, 0.0]),
            Err(SolverError::NonPositiveCurvature(_))
        ));
        assert!(lift_ball_point(&g, d, &[1.0, 1.0, 0.0, 0.0, 0.0]).is_err());
    }
}
