//! Internal-consistency check of a published nine-vertex example table.
//!
//! Each row lists a vertex's degree, its Li–Wang–Van Mieghem and resolvent
//! lower bounds, the eigenvector entry, and the Cioabă–Gregory upper bound,
//! printed to about five digits. The graph itself is not available, so the
//! table is checked against itself:
//!
//! 1. invert the upper bound on every row, `ρ = √(d (1/u² − 1))`, and take the
//!    median as the common spectral radius;
//! 2. invert the Li–Wang–Van Mieghem bound, `ρ_i = ρ − 2ρ ℓ²`;
//! 3. recompute the resolvent bound from `(d, ρ, ρ_i)` and compare it with the
//!    printed column.

use serde::Serialize;

use crate::bounds::STAR_UPPER;

/// One printed row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub name: &'static str,
    pub degree: u32,
    pub lwm: f64,
    pub resolvent: f64,
    pub x: f64,
    pub cg: f64,
}

const fn row(name: &'static str, degree: u32, lwm: f64, resolvent: f64, x: f64, cg: f64) -> TableRow {
    TableRow {
        name,
        degree,
        lwm,
        resolvent,
        x,
        cg,
    }
}

pub const PUBLISHED_TABLE: [TableRow; 9] = [
    row("b", 6, 0.39725, 0.45901, 0.49917, 0.5213),
    row("c", 6, 0.374, 0.41636, 0.48264, 0.5213),
    row("g", 4, 0.29584, 0.33114, 0.39818, 0.44634),
    row("a", 3, 0.18076, 0.14959, 0.26109, 0.39654),
    row("e", 3, 0.25233, 0.28276, 0.34415, 0.39654),
    row("i", 3, 0.18904, 0.16325, 0.27064, 0.39654),
    row("d", 2, 0.17415, 0.16949, 0.24485, 0.33261),
    row("f", 2, 0.13045, 0.096049, 0.18786, 0.33261),
    row("h", 1, 0.044799, 0.016093, 0.065114, 0.24198),
];

/// Maximum allowed spread of the per-row spectral radius estimates.
pub const RHO_SPREAD_MAX: f64 = 5e-4;
/// Maximum allowed error of the recomputed resolvent column.
pub const RESOLVENT_ERROR_MAX: f64 = 1e-4;
/// Rounding allowance for the printed ordering `max(lower) ≤ x ≤ upper`.
pub const ORDERING_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCheck {
    pub rows: Vec<TableRow>,
    pub inferred_rho_per_row: Vec<f64>,
    /// Median of `inferred_rho_per_row`.
    pub rho: f64,
    pub rho_spread: f64,
    pub inferred_rho_deleted: Vec<f64>,
    pub recomputed_resolvent: Vec<f64>,
    pub max_abs_error_resolvent: f64,
    pub ordering_ok: Vec<bool>,
}

impl TableCheck {
    pub fn passes(&self) -> bool {
        self.rho_spread <= RHO_SPREAD_MAX
            && self.max_abs_error_resolvent <= RESOLVENT_ERROR_MAX
            && self.ordering_ok.iter().all(|&ok| ok)
            && self.inferred_rho_deleted.iter().all(|&r| r < self.rho)
            && self.recomputed_resolvent.iter().all(|&r| r > 0.0 && r < 1.0)
    }
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Runs the inversion pipeline over arbitrary rows.
pub fn check_table(rows: &[TableRow]) -> TableCheck {
    let inferred_rho_per_row: Vec<f64> = rows
        .iter()
        .map(|r| (f64::from(r.degree) * (1.0 / (r.cg * r.cg) - 1.0)).sqrt())
        .collect();
    let rho = median(&inferred_rho_per_row);
    let max = inferred_rho_per_row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = inferred_rho_per_row.iter().copied().fold(f64::INFINITY, f64::min);

    let inferred_rho_deleted: Vec<f64> = rows.iter().map(|r| rho - 2.0 * rho * r.lwm * r.lwm).collect();
    let recomputed_resolvent: Vec<f64> = rows
        .iter()
        .zip(&inferred_rho_deleted)
        .map(|(r, &rho_i)| {
            let gap = rho - rho_i;
            1.0 / (1.0 + f64::from(r.degree) / (gap * gap)).sqrt()
        })
        .collect();
    let max_abs_error_resolvent = rows
        .iter()
        .zip(&recomputed_resolvent)
        .map(|(r, &c)| (c - r.resolvent).abs())
        .fold(0.0, f64::max);
    let ordering_ok = rows
        .iter()
        .map(|r| {
            r.lwm.max(r.resolvent) <= r.x + ORDERING_TOL && r.x <= r.cg + ORDERING_TOL && r.cg <= STAR_UPPER + ORDERING_TOL
        })
        .collect();

    TableCheck {
        rows: rows.to_vec(),
        inferred_rho_per_row,
        rho,
        rho_spread: max - min,
        inferred_rho_deleted,
        recomputed_resolvent,
        max_abs_error_resolvent,
        ordering_ok,
    }
}

/// [`check_table`] on [`PUBLISHED_TABLE`].
pub fn check_published_table() -> TableCheck {
    check_table(&PUBLISHED_TABLE)
}
