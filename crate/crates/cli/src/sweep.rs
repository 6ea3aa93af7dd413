//! (T₀, T) grid sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stherm_core::analysis::{steady_state_report, Classification};
use stherm_core::ergotropy::{asymptotic_ergotropy, ergotropy};
use stherm_core::thermal::{Temperature, ThermalModel};

use crate::config::SweepGrid;

/// Column order of the CSV header and JSON keys.
pub const FIELDS: [&str; 16] = [
    "t0",
    "t",
    "ergotropy",
    "asymptotic_ergotropy",
    "excess_ergotropy",
    "e_ss",
    "e_gibbs",
    "s_ss",
    "s_gibbs",
    "rel_entropy",
    "delta_s_sys",
    "delta_s_bath",
    "erasure_cost",
    "lambda",
    "classification",
    "h_sectors",
];

/// One grid point. `None` marks an undefined value (λ on the diagonal) or a
/// quantity that failed at this point; `error` says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub t0: f64,
    pub t: f64,
    pub ergotropy: Option<f64>,
    pub asymptotic_ergotropy: Option<f64>,
    pub excess_ergotropy: Option<f64>,
    pub e_ss: Option<f64>,
    pub e_gibbs: Option<f64>,
    pub s_ss: Option<f64>,
    pub s_gibbs: Option<f64>,
    pub rel_entropy: Option<f64>,
    pub delta_s_sys: Option<f64>,
    pub delta_s_bath: Option<f64>,
    pub erasure_cost: Option<f64>,
    pub lambda: Option<f64>,
    pub classification: String,
    pub h_sectors: Option<f64>,
    #[serde(skip)]
    pub error: Option<String>,
}

impl ResultRow {
    fn failed(t0: f64, t: f64, error: String) -> Self {
        ResultRow {
            t0,
            t,
            ergotropy: None,
            asymptotic_ergotropy: None,
            excess_ergotropy: None,
            e_ss: None,
            e_gibbs: None,
            s_ss: None,
            s_gibbs: None,
            rel_entropy: None,
            delta_s_sys: None,
            delta_s_bath: None,
            erasure_cost: None,
            lambda: None,
            classification: Classification::Undefined.as_str().to_string(),
            h_sectors: None,
            error: Some(error),
        }
    }
}

/// Evaluates one point; failures are recorded in the row, never raised.
pub fn compute_row(model: &ThermalModel, t0: f64, t: f64) -> ResultRow {
    let temps = Temperature::new(t0).and_then(|a| Temperature::new(t).map(|b| (a, b)));
    let (temp0, temp) = match temps {
        Ok(p) => p,
        Err(e) => return ResultRow::failed(t0, t, e.to_string()),
    };
    let (report, rho_ss) = match steady_state_report(model, temp0, temp) {
        Ok(r) => r,
        Err(e) => return ResultRow::failed(t0, t, e.to_string()),
    };
    let h = model.hamiltonian();
    let mut error = None;
    let single = ergotropy(&rho_ss, h)
        .map_err(|e| error = Some(e.to_string()))
        .ok();
    let asymptotic = asymptotic_ergotropy(&rho_ss, h)
        .map_err(|e| error = Some(e.to_string()))
        .ok();
    let excess = match (asymptotic, single) {
        (Some(a), Some(w)) => Some(a - w),
        _ => None,
    };
    ResultRow {
        t0,
        t,
        ergotropy: single,
        asymptotic_ergotropy: asymptotic,
        excess_ergotropy: excess,
        e_ss: Some(report.e_ss),
        e_gibbs: Some(report.e_gibbs),
        s_ss: Some(report.s_ss),
        s_gibbs: Some(report.s_gibbs),
        rel_entropy: Some(report.rel_ent_ss_gibbs),
        delta_s_sys: Some(report.delta_s_sys),
        delta_s_bath: Some(report.delta_s_bath),
        erasure_cost: Some(report.erasure_cost),
        lambda: report.lambda,
        classification: report.classification.as_str().to_string(),
        h_sectors: Some(report.h_sectors),
        error,
    }
}

/// Rows in row-major grid order (t0 outer, t inner) for any `jobs`.
pub fn run_sweep(model: &ThermalModel, grid: &SweepGrid, jobs: usize) -> Vec<ResultRow> {
    let points = grid.points();
    if jobs <= 1 {
        return points
            .iter()
            .map(|&(a, b)| compute_row(model, a, b))
            .collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| {
            points
                .par_iter()
                .map(|&(a, b)| compute_row(model, a, b))
                .collect()
        }),
        Err(_) => points
            .iter()
            .map(|&(a, b)| compute_row(model, a, b))
            .collect(),
    }
}
