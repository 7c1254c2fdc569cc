//! Bulk verification over graph streams: every labeled connected graph of a
//! given order, seeded random samples, or an explicit list.
//!
//! Graphs are analyzed in parallel; the summary is an order-independent
//! reduction, so reruns with the same inputs produce identical summaries.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    analyze, comparison_signs, tally_winners, verify_report, BoundsReport, Violation, WinnerTally, STAR_UPPER,
};
use crate::enumerate::{MaskDecoder, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_ORDER};
use crate::error::{Error, Result};
use crate::graph::{random_connected, Graph};
use crate::spectral::{EigenMethod, SolverConfig};

/// Tolerance for the sign agreement of the two lower-bound comparisons.
pub const COMPARISON_TOL: f64 = 1e-10;
/// Strict-inequality margin for non-equality cases.
pub const STRICTNESS_MARGIN: f64 = 1e-12;
/// Violations retained verbatim in a summary; the rest are only counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 64;

/// Smallest observed distance between each bound and the eigenvector entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TightestGaps {
    /// `min (1/√2 − x_max)`.
    pub star_upper: f64,
    /// `min (upper_cg − x_i)`.
    pub cg_upper: f64,
    /// `min (x_i − lower_lwm)`.
    pub lwm_lower: f64,
    /// `min (x_i − lower_resolvent)`.
    pub resolvent_lower: f64,
}

impl Default for TightestGaps {
    fn default() -> Self {
        TightestGaps {
            star_upper: f64::INFINITY,
            cg_upper: f64::INFINITY,
            lwm_lower: f64::INFINITY,
            resolvent_lower: f64::INFINITY,
        }
    }
}

impl TightestGaps {
    fn merge(&mut self, o: &TightestGaps) {
        self.star_upper = self.star_upper.min(o.star_upper);
        self.cg_upper = self.cg_upper.min(o.cg_upper);
        self.lwm_lower = self.lwm_lower.min(o.lwm_lower);
        self.resolvent_lower = self.resolvent_lower.min(o.resolvent_lower);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub graphs_checked: u64,
    pub vertices_checked: u64,
    pub violation_count: u64,
    /// Up to [`MAX_RECORDED_VIOLATIONS`] violations.
    pub violations: Vec<Violation>,
    /// Largest `bound − x_i` (lower bounds) or `x_i − bound` (upper bounds)
    /// seen anywhere; nonpositive when no bound was crossed.
    pub worst_slack_consumed: f64,
    pub tightest: TightestGaps,
    /// Largest `|exact_sq − x_i²|`.
    pub max_identity_error: f64,
    /// Vertices where `sign(resolvent − lwm) ≠ sign(ρ² − ρ_i² − d_i)`.
    pub comparison_mismatches: u64,
    /// Vertices where both comparisons are ties.
    pub comparison_ties: u64,
    pub star_graphs: u64,
    /// Non-star graphs with `x_max ≥ 1/√2 − margin`.
    pub non_star_at_star_bound: u64,
    pub cg_equality_vertices: u64,
    /// Vertices without the equality conditions but with `x_i ≥ upper_cg − margin`.
    pub cg_strictness_failures: u64,
    pub oracle_fallbacks: u64,
    pub solver_failures: u64,
    pub first_solver_error: Option<String>,
    pub winners_by_degree: BTreeMap<usize, WinnerTally>,
}

impl Default for SweepSummary {
    fn default() -> Self {
        SweepSummary {
            graphs_checked: 0,
            vertices_checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            worst_slack_consumed: f64::NEG_INFINITY,
            tightest: TightestGaps::default(),
            max_identity_error: 0.0,
            comparison_mismatches: 0,
            comparison_ties: 0,
            star_graphs: 0,
            non_star_at_star_bound: 0,
            cg_equality_vertices: 0,
            cg_strictness_failures: 0,
            oracle_fallbacks: 0,
            solver_failures: 0,
            first_solver_error: None,
            winners_by_degree: BTreeMap::new(),
        }
    }
}

impl SweepSummary {
    /// No violations, no anomalies, no solver failures.
    pub fn is_clean(&self) -> bool {
        self.bound_failures() == 0 && self.solver_failures == 0
    }

    /// Violations plus failed equality, strictness and comparison checks.
    pub fn bound_failures(&self) -> u64 {
        self.violation_count + self.comparison_mismatches + self.non_star_at_star_bound + self.cg_strictness_failures
    }

    pub fn observe(&mut self, report: &BoundsReport, cfg: &SolverConfig) {
        self.graphs_checked += 1;
        self.vertices_checked += report.rows.len() as u64;
        if report.spectral.method == EigenMethod::OracleFallback {
            self.oracle_fallbacks += 1;
        }

        let violations = verify_report(report, cfg);
        self.violation_count += violations.len() as u64;
        let room = MAX_RECORDED_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(violations.into_iter().take(room));

        if report.graph.n() >= 2 {
            let star_gap = STAR_UPPER - report.x_max;
            self.tightest.star_upper = self.tightest.star_upper.min(star_gap);
            self.worst_slack_consumed = self.worst_slack_consumed.max(-star_gap);
            if report.star_equality {
                self.star_graphs += 1;
            } else if report.x_max >= STAR_UPPER - STRICTNESS_MARGIN {
                self.non_star_at_star_bound += 1;
            }
        }

        let rho = report.spectral.rho;
        for (row, &cg_eq) in report.rows.iter().zip(&report.cg_equality) {
            let cg_gap = row.upper_cg - row.actual;
            let lwm_gap = row.actual - row.lower_lwm;
            let resolvent_gap = row.actual - row.lower_resolvent;
            self.tightest.cg_upper = self.tightest.cg_upper.min(cg_gap);
            self.tightest.lwm_lower = self.tightest.lwm_lower.min(lwm_gap);
            self.tightest.resolvent_lower = self.tightest.resolvent_lower.min(resolvent_gap);
            self.worst_slack_consumed = self.worst_slack_consumed.max(-cg_gap).max(-lwm_gap).max(-resolvent_gap);
            self.max_identity_error = self
                .max_identity_error
                .max((row.exact_sq - row.actual * row.actual).abs());

            if cg_eq {
                self.cg_equality_vertices += 1;
            } else if cg_gap <= STRICTNESS_MARGIN {
                self.cg_strictness_failures += 1;
            }

            let signs = comparison_signs(rho, row, COMPARISON_TOL);
            if signs.bounds != signs.algebraic {
                self.comparison_mismatches += 1;
            } else if signs.bounds == 0 {
                self.comparison_ties += 1;
            }
        }
        tally_winners(report, &mut self.winners_by_degree);
    }

    fn record_error(&mut self, error: &Error) {
        self.solver_failures += 1;
        if self.first_solver_error.is_none() {
            self.first_solver_error = Some(error.to_string());
        }
    }

    fn observe_graph(mut self, g: &Graph, cfg: &SolverConfig) -> Self {
        match analyze(g, cfg) {
            Ok(report) => self.observe(&report, cfg),
            Err(e) => self.record_error(&e),
        }
        self
    }

    pub fn merge(mut self, other: SweepSummary) -> Self {
        self.graphs_checked += other.graphs_checked;
        self.vertices_checked += other.vertices_checked;
        self.violation_count += other.violation_count;
        let room = MAX_RECORDED_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
        self.worst_slack_consumed = self.worst_slack_consumed.max(other.worst_slack_consumed);
        self.tightest.merge(&other.tightest);
        self.max_identity_error = self.max_identity_error.max(other.max_identity_error);
        self.comparison_mismatches += other.comparison_mismatches;
        self.comparison_ties += other.comparison_ties;
        self.star_graphs += other.star_graphs;
        self.non_star_at_star_bound += other.non_star_at_star_bound;
        self.cg_equality_vertices += other.cg_equality_vertices;
        self.cg_strictness_failures += other.cg_strictness_failures;
        self.oracle_fallbacks += other.oracle_fallbacks;
        self.solver_failures += other.solver_failures;
        if self.first_solver_error.is_none() {
            self.first_solver_error = other.first_solver_error;
        }
        for (degree, tally) in &other.winners_by_degree {
            self.winners_by_degree.entry(*degree).or_default().merge(tally);
        }
        self
    }
}

/// Verifies every labeled connected graph on `n` vertices (`n ≤ 7`).
pub fn sweep_exhaustive(n: usize, cfg: &SolverConfig) -> Result<SweepSummary> {
    sweep_exhaustive_with_cap(n, DEFAULT_ENUMERATION_CAP, cfg)
}

pub fn sweep_exhaustive_with_cap(n: usize, cap: usize, cfg: &SolverConfig) -> Result<SweepSummary> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let cap = cap.min(MAX_ENUMERATION_ORDER);
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let decoder = MaskDecoder::new(n);
    let summary = (0..decoder.mask_count())
        .into_par_iter()
        .filter(|&mask| decoder.is_connected(mask))
        .fold(SweepSummary::default, |acc, mask| acc.observe_graph(&decoder.graph(mask), cfg))
        .reduce(SweepSummary::default, SweepSummary::merge);
    Ok(summary)
}

/// Seed used for the `k`-th sample of a random sweep.
pub fn sample_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_add(k)
}

/// Verifies `count` connected `G(n, p)` samples, sample `k` drawn with
/// [`random_connected`] under [`sample_seed`]`(seed, k)`.
pub fn sweep_random(n: usize, p: f64, count: u64, seed: u64, cfg: &SolverConfig) -> Result<SweepSummary> {
    cfg.validate()?;
    let graphs = (0..count)
        .into_par_iter()
        .map(|k| random_connected(n, p, sample_seed(seed, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(sweep_graphs(&graphs, cfg))
}

/// Verifies an explicit list of graphs. Disconnected graphs count as solver
/// failures.
pub fn sweep_graphs(graphs: &[Graph], cfg: &SolverConfig) -> SweepSummary {
    graphs
        .par_iter()
        .fold(SweepSummary::default, |acc, g| acc.observe_graph(g, cfg))
        .reduce(SweepSummary::default, SweepSummary::merge)
}
