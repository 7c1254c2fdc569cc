//! Per-vertex bounds on entries of the principal eigenvector.
//!
//! For a connected graph with spectral radius `ρ`, unit principal eigenvector
//! `x`, vertex degree `d_i` and `ρ_i` the spectral radius of the graph with
//! vertex `i` deleted:
//!
//! | bound | statement |
//! |-------|-----------|
//! | Papendieck–Recht | `x_max ≤ 1/√2`, equality iff the graph is a star |
//! | Cioabă–Gregory | `x_i ≤ 1/√(1 + ρ²/d_i)` |
//! | Li–Wang–Van Mieghem | `x_i ≥ √((ρ − ρ_i)/(2ρ))` |
//! | resolvent bound | `x_i ≥ 1/√(1 + d_i/(ρ − ρ_i)²)` |
//!
//! The resolvent bound comes from the exact identity (Tao–Vu)
//! `x_i² = 1/(1 + ‖(ρI − B)⁻¹ b‖²)`, where `B` is the adjacency matrix of the
//! deleted graph and `b` marks the neighbors of `i`, by replacing
//! `‖(ρI − B)⁻¹ b‖²` with `‖(ρI − B)⁻¹‖² ‖b‖² = d_i/(ρ − ρ_i)²`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::encode_graph6;
use crate::linalg::norm_sq;
use crate::spectral::{principal_eigenpair, shifted_solve, spectral_radius_any_with, SolverConfig, SpectralResult};

/// `1/√2`, the sharp upper bound on the largest eigenvector entry.
pub const STAR_UPPER: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Tolerance for `x_max = 1/√2` on stars.
pub const STAR_EQUALITY_TOL: f64 = 1e-10;
/// Tolerance for `x_i = upper_cg` when the Cioabă–Gregory equality conditions hold.
pub const CG_EQUALITY_TOL: f64 = 1e-9;
/// How close `x_i` must be to `x_max` to count as the maximum entry.
pub const XMAX_MATCH_TOL: f64 = 1e-10;
/// Tolerance for the exact identity `exact_sq = x_i²`.
pub const EXACT_IDENTITY_TOL: f64 = 1e-8;
/// Two lower bounds closer than this are reported as a tie.
pub const WINNER_TIE_TOL: f64 = 1e-12;
/// Tolerance on `Σ x_i² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Everything computed for a single vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexBounds {
    pub vertex: usize,
    pub degree: usize,
    /// `ρ_i`, spectral radius with this vertex deleted.
    pub rho_deleted: f64,
    /// `√((ρ − ρ_i)/(2ρ))`.
    pub lower_lwm: f64,
    /// `1/√(1 + d_i/(ρ − ρ_i)²)`.
    pub lower_resolvent: f64,
    /// `1/√(1 + ρ²/d_i)`.
    pub upper_cg: f64,
    /// `1/(1 + ‖(ρI − B)⁻¹ b‖²)`, equal to `x_i²`.
    pub exact_sq: f64,
    /// `x_i`.
    pub actual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundWinner {
    Lwm,
    Resolvent,
    Tie,
}

impl fmt::Display for LowerBoundWinner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerBoundWinner::Lwm => "lwm",
            LowerBoundWinner::Resolvent => "resolvent",
            LowerBoundWinner::Tie => "tie",
        })
    }
}

impl VertexBounds {
    pub fn winner(&self) -> LowerBoundWinner {
        let diff = self.lower_resolvent - self.lower_lwm;
        if diff.abs() <= WINNER_TIE_TOL {
            LowerBoundWinner::Tie
        } else if diff > 0.0 {
            LowerBoundWinner::Resolvent
        } else {
            LowerBoundWinner::Lwm
        }
    }

    /// The larger of the two lower bounds.
    pub fn best_lower(&self) -> f64 {
        self.lower_lwm.max(self.lower_resolvent)
    }
}

/// Whole-graph analysis: one row per vertex plus the graph-level checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub graph: Graph,
    pub spectral: SpectralResult,
    pub rows: Vec<VertexBounds>,
    pub x_max: f64,
    pub star_upper: f64,
    /// The graph is a star, so `x_max` must equal `1/√2`.
    pub star_equality: bool,
    /// Cioabă–Gregory equality conditions, per vertex.
    pub cg_equality: Vec<bool>,
    pub winners: Vec<LowerBoundWinner>,
    /// Set when the per-vertex analysis does not apply (single vertex).
    pub note: Option<String>,
}

/// Indicator of the neighbors of `v`, indexed as in `g.delete_vertex(v)`.
fn neighbor_indicator(g: &Graph, v: usize) -> Vec<f64> {
    let mut b = vec![0.0; g.n() - 1];
    for &u in g.neighbors(v) {
        b[if u < v { u } else { u - 1 }] = 1.0;
    }
    b
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices { required: 2, n: g.n() });
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

/// Squared resolvent norm `‖(ρI − B)⁻¹ b‖²`.
fn resolvent_norm_sq(g: &Graph, rho: f64, deleted: &Graph, rho_deleted: f64, v: usize) -> Result<f64> {
    let y = shifted_solve(rho, deleted, rho_deleted, &neighbor_indicator(g, v))?;
    Ok(norm_sq(&y))
}

/// `x_v²` from the exact identity, computed with a Cholesky solve against the
/// deleted graph and without reading the eigenvector.
pub fn taovu_exact(g: &Graph, spectral: &SpectralResult, v: usize) -> Result<f64> {
    check_vertex(g, v)?;
    let deleted = g.delete_vertex(v)?;
    let rho_deleted = spectral_radius_any_with(&deleted, &SolverConfig::default())?;
    Ok(1.0 / (1.0 + resolvent_norm_sq(g, spectral.rho, &deleted, rho_deleted, v)?))
}

pub fn vertex_bounds(g: &Graph, spectral: &SpectralResult, v: usize, cfg: &SolverConfig) -> Result<VertexBounds> {
    check_vertex(g, v)?;
    let deleted = g.delete_vertex(v)?;
    let rho = spectral.rho;
    let rho_deleted = spectral_radius_any_with(&deleted, cfg)?;
    let d = g.degree(v) as f64;
    let gap = rho - rho_deleted;
    Ok(VertexBounds {
        vertex: v,
        degree: g.degree(v),
        rho_deleted,
        lower_lwm: (gap / (2.0 * rho)).sqrt(),
        lower_resolvent: 1.0 / (1.0 + d / (gap * gap)).sqrt(),
        upper_cg: 1.0 / (1.0 + rho * rho / d).sqrt(),
        exact_sq: 1.0 / (1.0 + resolvent_norm_sq(g, rho, &deleted, rho_deleted, v)?),
        actual: spectral.eigenvector[v],
    })
}

/// The two sides of the operator-norm step that turns the exact identity into
/// the resolvent bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofChain {
    /// `‖(ρI − B)⁻¹ b‖²`.
    pub t1: f64,
    /// `‖(ρI − B)⁻¹‖² ‖b‖² = d_v/(ρ − ρ_v)²`.
    pub t2: f64,
    /// `1/(1 + t1)`.
    pub exact_sq: f64,
    /// `t1 ≤ t2 + slack` and `exact_sq` agrees with `x_v²`.
    pub holds: bool,
}

pub fn proof_chain_check(g: &Graph, spectral: &SpectralResult, v: usize, cfg: &SolverConfig) -> Result<ProofChain> {
    check_vertex(g, v)?;
    let deleted = g.delete_vertex(v)?;
    let rho_deleted = spectral_radius_any_with(&deleted, cfg)?;
    let t1 = resolvent_norm_sq(g, spectral.rho, &deleted, rho_deleted, v)?;
    let gap = spectral.rho - rho_deleted;
    let t2 = g.degree(v) as f64 / (gap * gap);
    let exact_sq = 1.0 / (1.0 + t1);
    let actual = spectral.eigenvector[v];
    Ok(ProofChain {
        t1,
        t2,
        exact_sq,
        holds: t1 <= t2 + cfg.verify_slack && (exact_sq - actual * actual).abs() <= EXACT_IDENTITY_TOL,
    })
}

/// Cioabă–Gregory equality conditions, taken jointly: `d_v = n − 1`, the
/// deleted graph is regular, and `x_v` is the largest entry.
pub fn check_cg_equality(g: &Graph, spectral: &SpectralResult, v: usize) -> Result<bool> {
    check_vertex(g, v)?;
    if g.degree(v) != g.n() - 1 {
        return Ok(false);
    }
    Ok(g.delete_vertex(v)?.is_regular().is_some() && spectral.eigenvector[v] >= spectral.x_max() - XMAX_MATCH_TOL)
}

/// Computes the eigenpair and every per-vertex quantity.
pub fn analyze(g: &Graph, cfg: &SolverConfig) -> Result<BoundsReport> {
    let spectral = principal_eigenpair(g, cfg)?;
    analyze_with_spectrum(g, spectral, cfg)
}

/// As [`analyze`] with a precomputed eigenpair.
pub fn analyze_with_spectrum(g: &Graph, spectral: SpectralResult, cfg: &SolverConfig) -> Result<BoundsReport> {
    let x_max = spectral.x_max();
    if g.n() == 1 {
        return Ok(BoundsReport {
            graph: g.clone(),
            spectral,
            rows: Vec::new(),
            x_max,
            star_upper: STAR_UPPER,
            star_equality: false,
            cg_equality: Vec::new(),
            winners: Vec::new(),
            note: Some("single vertex: deleting it leaves no graph, so no per-vertex bounds apply".into()),
        });
    }
    let rows = (0..g.n())
        .map(|v| vertex_bounds(g, &spectral, v, cfg))
        .collect::<Result<Vec<_>>>()?;
    let cg_equality = (0..g.n())
        .map(|v| check_cg_equality(g, &spectral, v))
        .collect::<Result<Vec<_>>>()?;
    let winners = rows.iter().map(VertexBounds::winner).collect();
    Ok(BoundsReport {
        graph: g.clone(),
        spectral,
        rows,
        x_max,
        star_upper: STAR_UPPER,
        star_equality: g.is_star(),
        cg_equality,
        winners,
        note: None,
    })
}

/// Which inequality or identity a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `x_max ≤ 1/√2`.
    StarUpper,
    /// Star graph with `x_max ≠ 1/√2`.
    StarEquality,
    CgUpper,
    /// Equality conditions hold but `x_i ≠ upper_cg`.
    CgEquality,
    LwmLower,
    ResolventLower,
    ExactIdentity,
    /// `ρ_i < ρ`.
    DeletionGap,
    /// Eigenvector is not positive or not unit length.
    PerronVector,
    /// Rows do not cover each vertex exactly once.
    Coverage,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::StarUpper => "x_max <= 1/sqrt(2) (Papendieck-Recht)",
            Check::StarEquality => "x_max = 1/sqrt(2) on a star (Papendieck-Recht equality)",
            Check::CgUpper => "x_i <= 1/sqrt(1 + rho^2/d_i) (Cioaba-Gregory)",
            Check::CgEquality => "x_i = upper bound under Cioaba-Gregory equality conditions",
            Check::LwmLower => "x_i >= sqrt((rho - rho_i)/(2 rho)) (Li-Wang-Van Mieghem)",
            Check::ResolventLower => "x_i >= 1/sqrt(1 + d_i/(rho - rho_i)^2) (resolvent bound)",
            Check::ExactIdentity => "x_i^2 = 1/(1 + |(rho I - B)^-1 b|^2) (Tao-Vu identity)",
            Check::DeletionGap => "rho_i < rho",
            Check::PerronVector => "x positive with unit 2-norm",
            Check::Coverage => "one row per vertex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// graph6 encoding of the offending graph.
    pub graph: String,
    pub vertex: Option<usize>,
    pub check: Check,
    /// By how much the check failed.
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph {}", self.graph)?;
        if let Some(v) = self.vertex {
            write!(f, " vertex {v}")?;
        }
        write!(f, ": {} violated by {:e}", self.check, self.magnitude)
    }
}

/// Machine-checks every inequality and identity in a report. An empty list
/// means all of them hold within `cfg.verify_slack` (or the fixed tolerances
/// for the equality cases).
pub fn verify_report(report: &BoundsReport, cfg: &SolverConfig) -> Vec<Violation> {
    let g = &report.graph;
    let name = encode_graph6(g).unwrap_or_else(|_| format!("<n={}, m={}>", g.n(), g.edge_count()));
    let slack = cfg.verify_slack;
    let mut out = Vec::new();
    let mut flag = |vertex: Option<usize>, check: Check, magnitude: f64| {
        out.push(Violation {
            graph: name.clone(),
            vertex,
            check,
            magnitude,
        })
    };

    let x = &report.spectral.eigenvector;
    let norm_err = (norm_sq(x) - 1.0).abs();
    if norm_err > NORMALIZATION_TOL {
        flag(None, Check::PerronVector, norm_err);
    }
    if let Some(min) = x.iter().copied().reduce(f64::min) {
        if !(min > 0.0) {
            flag(None, Check::PerronVector, -min);
        }
    }

    // the 1/√2 bound needs an edge; K_1 has x = (1)
    if g.n() >= 2 && report.x_max > STAR_UPPER + slack {
        flag(None, Check::StarUpper, report.x_max - STAR_UPPER);
    }
    if report.star_equality && (report.x_max - STAR_UPPER).abs() > STAR_EQUALITY_TOL {
        flag(None, Check::StarEquality, (report.x_max - STAR_UPPER).abs());
    }

    if g.n() >= 2 {
        let mut seen = vec![0usize; g.n()];
        for row in &report.rows {
            if row.vertex < g.n() {
                seen[row.vertex] += 1;
            }
        }
        if report.rows.len() != g.n() || seen.iter().any(|&c| c != 1) {
            flag(None, Check::Coverage, report.rows.len().abs_diff(g.n()) as f64);
        }
    }

    let rho = report.spectral.rho;
    for row in &report.rows {
        let v = Some(row.vertex);
        if !(row.rho_deleted < rho) {
            flag(v, Check::DeletionGap, row.rho_deleted - rho);
        }
        if !(row.lower_lwm > 0.0) || row.lower_lwm > row.actual + slack {
            flag(v, Check::LwmLower, row.lower_lwm - row.actual);
        }
        if !(row.lower_resolvent > 0.0) || row.lower_resolvent > row.actual + slack {
            flag(v, Check::ResolventLower, row.lower_resolvent - row.actual);
        }
        if !(row.actual <= row.upper_cg + slack) {
            flag(v, Check::CgUpper, row.actual - row.upper_cg);
        }
        let identity_err = (row.exact_sq - row.actual * row.actual).abs();
        if !(identity_err <= EXACT_IDENTITY_TOL) {
            flag(v, Check::ExactIdentity, identity_err);
        }
    }
    for (row, &eq) in report.rows.iter().zip(&report.cg_equality) {
        if eq && (row.actual - row.upper_cg).abs() > CG_EQUALITY_TOL {
            flag(Some(row.vertex), Check::CgEquality, (row.actual - row.upper_cg).abs());
        }
    }
    out
}

/// Signs of `lower_resolvent − lower_lwm` and of `ρ² − ρ_i² − d_i`, each
/// `0` when within `tol`. The two agree because
/// `lower_resolvent > lower_lwm ⇔ (ρ − ρ_i)(ρ + ρ_i) > d_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonSigns {
    pub bounds: i8,
    pub algebraic: i8,
}

pub fn comparison_signs(rho: f64, row: &VertexBounds, tol: f64) -> ComparisonSigns {
    let sign = |x: f64| {
        if x.abs() <= tol {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    ComparisonSigns {
        bounds: sign(row.lower_resolvent - row.lower_lwm),
        algebraic: sign(rho * rho - row.rho_deleted * row.rho_deleted - row.degree as f64),
    }
}

/// Per-degree counts of which lower bound is larger.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WinnerTally {
    pub resolvent: u64,
    pub lwm: u64,
    pub tie: u64,
}

impl WinnerTally {
    pub fn total(&self) -> u64 {
        self.resolvent + self.lwm + self.tie
    }

    /// Fraction of vertices where the resolvent bound is strictly larger.
    pub fn resolvent_fraction(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            self.resolvent as f64 / self.total() as f64
        }
    }

    pub fn merge(&mut self, other: &WinnerTally) {
        self.resolvent += other.resolvent;
        self.lwm += other.lwm;
        self.tie += other.tie;
    }
}

/// Adds the report's winners to a degree-bucketed tally. Descriptive only.
pub fn tally_winners(report: &BoundsReport, by_degree: &mut BTreeMap<usize, WinnerTally>) {
    for row in &report.rows {
        let t = by_degree.entry(row.degree).or_default();
        match row.winner() {
            LowerBoundWinner::Resolvent => t.resolvent += 1,
            LowerBoundWinner::Lwm => t.lwm += 1,
            LowerBoundWinner::Tie => t.tie += 1,
        }
    }
}
