//! Text, CSV and JSON renderings of reports and sweep summaries.

use std::fmt::Write as _;

use perron_bounds::bounds::{BoundsReport, Violation};
use perron_bounds::sweep::SweepSummary;
use perron_bounds::{encode_graph6, SolverConfig, TableCheck};
use serde::Serialize;

use crate::Output;

/// Scientific notation, or `n/a` for the infinite sentinels of an empty sweep.
fn sci(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        "n/a".into()
    }
}

/// `x` to five significant digits, like `0.37175` or `4.0098`.
pub(crate) fn sig5(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=5).contains(&magnitude) {
        return format!("{x:.4e}");
    }
    let decimals = (4 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Serialize)]
struct ReportView<'a> {
    graph6: Option<String>,
    #[serde(flatten)]
    report: &'a BoundsReport,
    verified: bool,
    violations: &'a [Violation],
}

pub(crate) fn reports(items: &[(BoundsReport, Vec<Violation>)], cfg: &SolverConfig, output: Output) -> String {
    match output {
        Output::Json => {
            let views: Vec<_> = items
                .iter()
                .map(|(report, violations)| ReportView {
                    graph6: encode_graph6(&report.graph).ok(),
                    report,
                    verified: violations.is_empty(),
                    violations,
                })
                .collect();
            let mut out = if views.len() == 1 {
                serde_json::to_string_pretty(&views[0])
            } else {
                serde_json::to_string_pretty(&views)
            }
            .expect("report serializes");
            out.push('\n');
            out
        }
        Output::Csv => csv_reports(items),
        Output::Text => items
            .iter()
            .map(|(r, v)| text_report(r, v, cfg))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn csv_reports(items: &[(BoundsReport, Vec<Violation>)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "graph6",
        "vertex",
        "label",
        "degree",
        "rho",
        "rho_deleted",
        "lower_lwm",
        "lower_resolvent",
        "x",
        "upper_cg",
        "exact_sq",
        "winner",
        "cg_equality",
    ])
    .expect("in-memory write");
    for (report, _) in items {
        let name = encode_graph6(&report.graph).unwrap_or_default();
        for ((row, winner), cg) in report.rows.iter().zip(&report.winners).zip(&report.cg_equality) {
            w.write_record([
                name.clone(),
                row.vertex.to_string(),
                report.graph.label(row.vertex),
                row.degree.to_string(),
                report.spectral.rho.to_string(),
                row.rho_deleted.to_string(),
                row.lower_lwm.to_string(),
                row.lower_resolvent.to_string(),
                row.actual.to_string(),
                row.upper_cg.to_string(),
                row.exact_sq.to_string(),
                winner.to_string(),
                cg.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn text_report(report: &BoundsReport, violations: &[Violation], cfg: &SolverConfig) -> String {
    let g = &report.graph;
    let s = &report.spectral;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph {}  n={}  m={}  rho={}  ({:?}, {} iterations, residual {:.1e})",
        encode_graph6(g).unwrap_or_else(|_| "-".into()),
        g.n(),
        g.edge_count(),
        sig5(s.rho),
        s.method,
        s.iterations,
        s.residual,
    );
    if let Some(note) = &report.note {
        let _ = writeln!(out, "note: {note}");
    }
    if !report.rows.is_empty() {
        let _ = writeln!(
            out,
            "\n{:<8} {:>6} {:>10} {:>10} {:>10} {:>10}",
            "vertex", "degree", "LWM", "resolvent", "x_i", "CG"
        );
        for row in &report.rows {
            let _ = writeln!(
                out,
                "{:<8} {:>6} {:>10} {:>10} {:>10} {:>10}",
                g.label(row.vertex),
                row.degree,
                sig5(row.lower_lwm),
                sig5(row.lower_resolvent),
                sig5(row.actual),
                sig5(row.upper_cg),
            );
        }
        out.push('\n');
        let winners: Vec<String> = report
            .rows
            .iter()
            .zip(&report.winners)
            .map(|(row, w)| format!("{}:{w}", g.label(row.vertex)))
            .collect();
        let _ = writeln!(out, "larger lower bound: {}", winners.join(" "));
    }
    let _ = writeln!(out, "x_max = {} <= 1/sqrt(2) = {}", sig5(report.x_max), sig5(report.star_upper));
    if report.star_equality {
        let _ = writeln!(out, "* Papendieck-Recht equality: star graph, x_max = 1/sqrt(2)");
    }
    let cg: Vec<String> = report
        .cg_equality
        .iter()
        .enumerate()
        .filter(|(_, &e)| e)
        .map(|(v, _)| g.label(v))
        .collect();
    if !cg.is_empty() {
        let _ = writeln!(out, "* Cioaba-Gregory equality at vertex {}", cg.join(", "));
    }
    if violations.is_empty() {
        let _ = writeln!(out, "verified: every bound holds (slack {:e})", cfg.verify_slack);
    } else {
        let _ = writeln!(out, "VIOLATIONS ({}):", violations.len());
        for v in violations {
            let _ = writeln!(out, "  {v}");
        }
    }
    out
}

#[derive(Serialize)]
struct SweepView<'a> {
    mode: &'a str,
    clean: bool,
    #[serde(flatten)]
    summary: &'a SweepSummary,
}

pub(crate) fn sweep(mode: &str, s: &SweepSummary, output: Output) -> String {
    if output == Output::Json {
        let view = SweepView {
            mode,
            clean: s.is_clean(),
            summary: s,
        };
        return serde_json::to_string_pretty(&view).expect("summary serializes") + "\n";
    }
    let mut out = String::new();
    let _ = writeln!(out, "mode: {mode}");
    let _ = writeln!(out, "graphs checked: {}", s.graphs_checked);
    let _ = writeln!(out, "vertices checked: {}", s.vertices_checked);
    let _ = writeln!(out, "violations: {}", s.violation_count);
    for v in &s.violations {
        let _ = writeln!(out, "  {v}");
    }
    let _ = writeln!(out, "worst slack consumed: {}", sci(s.worst_slack_consumed));
    let _ = writeln!(out, "tightest gaps:");
    let _ = writeln!(out, "  1/sqrt(2) - x_max:          {}", sci(s.tightest.star_upper));
    let _ = writeln!(out, "  CG upper - x_i:             {}", sci(s.tightest.cg_upper));
    let _ = writeln!(out, "  x_i - LWM lower:            {}", sci(s.tightest.lwm_lower));
    let _ = writeln!(out, "  x_i - resolvent lower:      {}", sci(s.tightest.resolvent_lower));
    let _ = writeln!(out, "max |exact_sq - x_i^2|: {}", sci(s.max_identity_error));
    let _ = writeln!(
        out,
        "lower-bound comparison: {} mismatches, {} ties",
        s.comparison_mismatches, s.comparison_ties
    );
    let _ = writeln!(
        out,
        "equality cases: {} stars, {} CG-equality vertices",
        s.star_graphs, s.cg_equality_vertices
    );
    let _ = writeln!(
        out,
        "strictness failures: {} non-star at 1/sqrt(2), {} CG",
        s.non_star_at_star_bound, s.cg_strictness_failures
    );
    let _ = writeln!(out, "oracle fallbacks: {}", s.oracle_fallbacks);
    if s.solver_failures > 0 {
        let _ = writeln!(
            out,
            "solver failures: {} (first: {})",
            s.solver_failures,
            s.first_solver_error.as_deref().unwrap_or("?")
        );
    }
    let _ = writeln!(out, "resolvent bound strictly larger, by degree:");
    for (degree, tally) in &s.winners_by_degree {
        let _ = writeln!(
            out,
            "  d={degree:<3} {:>6.1}% of {} (ties {})",
            100.0 * tally.resolvent_fraction(),
            tally.total(),
            tally.tie
        );
    }
    out
}

pub(crate) fn table_check(c: &TableCheck, output: Output) -> String {
    #[derive(Serialize)]
    struct View<'a> {
        passes: bool,
        #[serde(flatten)]
        check: &'a TableCheck,
    }
    if output == Output::Json {
        let view = View {
            passes: c.passes(),
            check: c,
        };
        return serde_json::to_string_pretty(&view).expect("check serializes") + "\n";
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>11} {:>5}",
        "vertex", "degree", "LWM", "resolvent", "x_i", "CG", "rho(CG)", "rho_i", "recomputed", "order"
    );
    for (k, r) in c.rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10.6} {:>10.6} {:>11.6} {:>5}",
            r.name,
            r.degree,
            r.lwm,
            r.resolvent,
            r.x,
            r.cg,
            c.inferred_rho_per_row[k],
            c.inferred_rho_deleted[k],
            c.recomputed_resolvent[k],
            if c.ordering_ok[k] { "ok" } else { "FAIL" },
        );
    }
    let _ = writeln!(out, "\nrho (median): {:.6}", c.rho);
    let _ = writeln!(out, "rho spread: {:.3e} (limit 5e-4)", c.rho_spread);
    let _ = writeln!(
        out,
        "max |recomputed - printed| resolvent bound: {:.3e} (limit 1e-4)",
        c.max_abs_error_resolvent
    );
    let _ = writeln!(out, "result: {}", if c.passes() { "PASS" } else { "FAIL" });
    out
}
