//! Dominant eigenpair of an adjacency matrix, plus the dense oracle and the
//! shifted SPD solve used by the exact per-vertex identity.
//!
//! Power iteration runs on `A + I` rather than `A`. For a connected graph
//! `A + I` is primitive, so its dominant eigenvalue `ρ + 1` is strictly larger
//! in magnitude than every other eigenvalue, even for bipartite graphs where
//! `-ρ` is an eigenvalue of `A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, SymmetricEigen};

/// Tolerances and caps for the eigensolver and the bound checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Stop once `‖Ax − ρx‖_∞` is at most this.
    pub residual_tol: f64,
    pub max_iterations: usize,
    /// Allowed violation when checking an inequality.
    pub verify_slack: f64,
    /// Fall back to the dense Jacobi oracle when power iteration stalls.
    pub oracle_fallback: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_tol: 1e-12,
            max_iterations: 1_000_000,
            verify_slack: 1e-9,
            oracle_fallback: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0) {
            return Err(Error::InvalidInput(format!("residual_tol must be positive, got {}", self.residual_tol)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidInput("max_iterations must be at least 1".into()));
        }
        if !(self.verify_slack >= 0.0) {
            return Err(Error::InvalidInput(format!("verify_slack must be nonnegative, got {}", self.verify_slack)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenMethod {
    PowerIteration,
    OracleFallback,
}

/// Spectral radius and unit positive principal eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
    /// Achieved `‖Ax − ρx‖_∞`.
    pub residual: f64,
    pub method: EigenMethod,
}

impl SpectralResult {
    pub fn x_max(&self) -> f64 {
        self.eigenvector.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `y = (A + I) x`.
fn shifted_matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        *out = x[v] + g.neighbors(v).iter().map(|&u| x[u]).sum::<f64>();
    }
}

/// Principal eigenpair of a connected graph by power iteration on `A + I`,
/// started from the normalized all-ones vector.
pub fn principal_eigenpair(g: &Graph, cfg: &SolverConfig) -> Result<SpectralResult> {
    cfg.validate()?;
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected {
            components: g.connected_components().components,
        });
    }
    if n == 1 {
        return Ok(SpectralResult {
            rho: 0.0,
            eigenvector: vec![1.0],
            iterations: 0,
            residual: 0.0,
            method: EigenMethod::PowerIteration,
        });
    }

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        shifted_matvec(g, &x, &mut y);
        let mu = linalg::dot(&x, &y);
        residual = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| (yi - mu * xi).abs())
            .fold(0.0, f64::max);
        if residual <= cfg.residual_tol {
            return Ok(SpectralResult {
                rho: mu - 1.0,
                eigenvector: x,
                iterations: iteration,
                residual,
                method: EigenMethod::PowerIteration,
            });
        }
        let norm = linalg::norm_sq(&y).sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }

    if !cfg.oracle_fallback {
        return Err(Error::NotConverged {
            iterations: cfg.max_iterations,
            residual,
        });
    }
    let oracle = dense_eigen_oracle(g)?;
    let rho = oracle.values[0];
    let mut x = oracle.vectors[0].clone();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|xi| *xi = -*xi);
    }
    shifted_matvec(g, &x, &mut y);
    let residual = x
        .iter()
        .zip(&y)
        .map(|(xi, yi)| (yi - xi - rho * xi).abs())
        .fold(0.0, f64::max);
    Ok(SpectralResult {
        rho,
        eigenvector: x,
        iterations: cfg.max_iterations,
        residual,
        method: EigenMethod::OracleFallback,
    })
}

/// Spectral radius of any graph: the largest principal eigenvalue over its
/// connected components. Isolated vertices contribute 0.
pub fn spectral_radius_any(g: &Graph) -> Result<f64> {
    spectral_radius_any_with(g, &SolverConfig::default())
}

pub fn spectral_radius_any_with(g: &Graph, cfg: &SolverConfig) -> Result<f64> {
    if g.is_connected() {
        return Ok(principal_eigenpair(g, cfg)?.rho);
    }
    let mut rho = 0.0f64;
    for component in g.connected_components().iter() {
        if component.len() > 1 {
            let sub = g.induced_subgraph(component);
            rho = rho.max(principal_eigenpair(&sub, cfg)?.rho);
        }
    }
    Ok(rho)
}

/// Full spectrum of the adjacency matrix by cyclic Jacobi sweeps, eigenvalues
/// descending. Independent of the power-iteration path.
pub fn dense_eigen_oracle(g: &Graph) -> Result<SymmetricEigen> {
    linalg::jacobi_eigen(&g.adjacency_matrix(), g.n())
}

/// Smallest admissible gap between the shift and the spectral radius of `B`.
pub const SHIFT_MARGIN: f64 = 1e-12;

/// Solves `(shift·I − B) y = rhs` where `B` is the adjacency matrix of
/// `b_graph`, by Cholesky factorization.
pub fn spd_solve(shift: f64, b_graph: &Graph, rhs: &[f64]) -> Result<Vec<f64>> {
    let radius = spectral_radius_any(b_graph)?;
    shifted_solve(shift, b_graph, radius, rhs)
}

/// As [`spd_solve`] with the spectral radius of `b_graph` already known.
pub(crate) fn shifted_solve(shift: f64, b_graph: &Graph, radius: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = b_graph.n();
    if rhs.len() != n {
        return Err(Error::InvalidInput(format!("rhs has length {}, graph has {n} vertices", rhs.len())));
    }
    if !(shift > radius + SHIFT_MARGIN) {
        return Err(Error::IllConditioned { shift, radius });
    }
    let mut m = b_graph.adjacency_matrix();
    for (k, entry) in m.iter_mut().enumerate() {
        *entry = if k / n == k % n { shift } else { -*entry };
    }
    linalg::cholesky_solve(&m, n, rhs).ok_or(Error::IllConditioned { shift, radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, Family};
    use approx::assert_abs_diff_eq;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn k2_pair() {
        let r = principal_eigenpair(&named_graph(Family::Complete, 2).unwrap(), &cfg()).unwrap();
        assert_abs_diff_eq!(r.rho, 1.0, epsilon = 1e-12);
        for x in r.eigenvector {
            assert_abs_diff_eq!(x, 0.5f64.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn star_pair() {
        let r = principal_eigenpair(&named_graph(Family::Star, 5).unwrap(), &cfg()).unwrap();
        assert_abs_diff_eq!(r.rho, 2.0, epsilon = 1e-11);
        assert_abs_diff_eq!(r.eigenvector[0], 0.5f64.sqrt(), epsilon = 1e-11);
        for &x in &r.eigenvector[1..] {
            assert_abs_diff_eq!(x, 0.125f64.sqrt(), epsilon = 1e-11);
        }
    }

    #[test]
    fn path_pair() {
        let r = principal_eigenpair(&named_graph(Family::Path, 4).unwrap(), &cfg()).unwrap();
        assert_abs_diff_eq!(r.rho, 1.618_033_988_749_895, epsilon = 1e-11);
        let expected = [0.371_748_034_460_184_5, 0.601_500_955_007_545_6, 0.601_500_955_007_545_6, 0.371_748_034_460_184_5];
        for (x, e) in r.eigenvector.iter().zip(expected) {
            assert_abs_diff_eq!(*x, e, epsilon = 1e-9);
        }
        assert!(r.residual <= 1e-12);
        assert_eq!(r.method, EigenMethod::PowerIteration);
    }

    #[test]
    fn single_vertex() {
        let r = principal_eigenpair(&Graph::edgeless(1).unwrap(), &cfg()).unwrap();
        assert_eq!((r.rho, r.eigenvector.clone()), (0.0, vec![1.0]));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            principal_eigenpair(&g, &cfg()).unwrap_err(),
            Error::Disconnected {
                components: vec![vec![0, 1], vec![2]]
            }
        );
    }

    #[test]
    fn non_convergence_and_fallback() {
        let g = named_graph(Family::Path, 6).unwrap();
        let strict = SolverConfig {
            max_iterations: 2,
            oracle_fallback: false,
            ..cfg()
        };
        assert!(matches!(
            principal_eigenpair(&g, &strict),
            Err(Error::NotConverged { iterations: 2, .. })
        ));
        let fallback = SolverConfig {
            max_iterations: 2,
            ..cfg()
        };
        let r = principal_eigenpair(&g, &fallback).unwrap();
        assert_eq!(r.method, EigenMethod::OracleFallback);
        let reference = principal_eigenpair(&g, &cfg()).unwrap();
        assert_abs_diff_eq!(r.rho, reference.rho, epsilon = 1e-12);
        assert!(r.eigenvector.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn config_validation() {
        let bad = SolverConfig {
            residual_tol: 0.0,
            ..cfg()
        };
        assert!(bad.validate().is_err());
        assert!(SolverConfig { max_iterations: 0, ..cfg() }.validate().is_err());
        assert!(SolverConfig { verify_slack: -1.0, ..cfg() }.validate().is_err());
    }

    #[test]
    fn radius_of_disconnected() {
        assert_eq!(spectral_radius_any(&Graph::edgeless(3).unwrap()).unwrap(), 0.0);
        let split = named_graph(Family::Path, 4).unwrap().delete_vertex(1).unwrap();
        assert_abs_diff_eq!(spectral_radius_any(&split).unwrap(), 1.0, epsilon = 1e-12);
        let triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_abs_diff_eq!(spectral_radius_any(&triangles).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn oracle_spectra() {
        let k3 = dense_eigen_oracle(&named_graph(Family::Complete, 3).unwrap()).unwrap();
        for (a, b) in k3.values.iter().zip([2.0, -1.0, -1.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        let s = 3f64.sqrt();
        let star = dense_eigen_oracle(&named_graph(Family::Star, 4).unwrap()).unwrap();
        for (a, b) in star.values.iter().zip([s, 0.0, 0.0, -s]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        let c4 = dense_eigen_oracle(&named_graph(Family::Cycle, 4).unwrap()).unwrap();
        for (a, b) in c4.values.iter().zip([2.0, 0.0, 0.0, -2.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn spd_solve_examples() {
        let y = spd_solve(2f64.sqrt(), &Graph::edgeless(2).unwrap(), &[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(y[0], 0.5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(linalg::norm_sq(&y), 1.0, epsilon = 1e-14);

        let y = spd_solve(3.0, &named_graph(Family::Complete, 3).unwrap(), &[1.0; 3]).unwrap();
        for yi in y {
            assert_abs_diff_eq!(yi, 1.0, epsilon = 1e-13);
        }

        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let y = spd_solve(golden, &named_graph(Family::Path, 3).unwrap(), &[1.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(linalg::norm_sq(&y), 6.236_067_977_499_8, epsilon = 1e-10);
    }

    #[test]
    fn spd_solve_rejects_small_shift() {
        let k3 = named_graph(Family::Complete, 3).unwrap();
        assert!(matches!(spd_solve(2.0, &k3, &[1.0; 3]), Err(Error::IllConditioned { .. })));
        assert!(matches!(spd_solve(1.0, &k3, &[1.0; 3]), Err(Error::IllConditioned { .. })));
        assert!(spd_solve(3.0, &k3, &[1.0; 2]).is_err());
    }
}
