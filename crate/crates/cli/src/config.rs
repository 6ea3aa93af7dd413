//! JSON model configuration.
//!
//! ```json
//! {
//!   "name": "parity_four_level",
//!   "energies": [0.0, 0.1, 0.2, 1.0],
//!   "sectors": [[0, 2], [1, 3]],
//!   "grid": {
//!     "t0": { "min": 0.01, "max": 2.0, "n": 100 },
//!     "t": [0.5, 1.0, 2.0],
//!     "spacing": "linear"
//!   }
//! }
//! ```
//!
//! Exactly one of `energies` (diagonal Hamiltonian) or `matrix` (rows of
//! entries, each a number or a `[re, im]` pair) must be given. `grid` is
//! optional; each axis is either a `{min, max, n}` range or an explicit list.

use std::path::Path;

use serde::Deserialize;
use stherm_core::linalg::{validate_hermitian, ComplexMatrix, HermitianOperator};
use stherm_core::thermal::{SectorDecomposition, ThermalModel};
use stherm_core::{Complex64, Error as CoreError};

use crate::CliError;

pub const DEFAULT_T_MIN: f64 = 0.01;
pub const DEFAULT_T_MAX: f64 = 2.0;
pub const DEFAULT_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl std::str::FromStr for Spacing {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(format!(
                "unknown spacing {other:?} (expected linear or log)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Real(f64),
    Complex([f64; 2]),
}

impl MatrixEntry {
    fn value(&self) -> Complex64 {
        match *self {
            MatrixEntry::Real(re) => Complex64::new(re, 0.0),
            MatrixEntry::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AxisSpec {
    Range { min: f64, max: f64, n: usize },
    Values(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub t0: AxisSpec,
    pub t: AxisSpec,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub name: String,
    #[serde(default)]
    pub energies: Option<Vec<f64>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<MatrixEntry>>>,
    pub sectors: Vec<Vec<usize>>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
}

/// Temperatures of a sweep; both axes strictly positive and ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub t0_values: Vec<f64>,
    pub t_values: Vec<f64>,
    pub spacing: Spacing,
}

fn invalid(invariant: &'static str, detail: impl Into<String>) -> CliError {
    CliError::Validation {
        invariant,
        detail: detail.into(),
    }
}

fn axis_points(min: f64, max: f64, n: usize, spacing: Spacing) -> Vec<f64> {
    if n == 1 {
        return vec![min];
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    let mut out: Vec<f64> = match spacing {
        Spacing::Linear => (0..n).map(|i| min + (max - min) * step(i)).collect(),
        Spacing::Log => {
            let (lo, hi) = (min.ln(), max.ln());
            (0..n).map(|i| (lo + (hi - lo) * step(i)).exp()).collect()
        }
    };
    // pin the endpoints exactly
    out[0] = min;
    out[n - 1] = max;
    out
}

fn expand_axis(name: &str, axis: &AxisSpec, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    match *axis {
        AxisSpec::Range { min, max, n } => {
            if n == 0 {
                return Err(invalid("non-empty grid", format!("{name}: n = 0")));
            }
            if !(min.is_finite() && max.is_finite() && min > 0.0) {
                return Err(invalid(
                    "positive temperatures",
                    format!("{name}: min = {min}, max = {max}"),
                ));
            }
            if n > 1 && max <= min {
                return Err(invalid(
                    "ascending grid",
                    format!("{name}: max {max} <= min {min}"),
                ));
            }
            Ok(axis_points(min, max, n, spacing))
        }
        AxisSpec::Values(ref v) => Ok(v.clone()),
    }
}

impl SweepGrid {
    pub fn new(
        t0_values: Vec<f64>,
        t_values: Vec<f64>,
        spacing: Spacing,
    ) -> Result<Self, CliError> {
        for (name, values) in [("t0", &t0_values), ("t", &t_values)] {
            if values.is_empty() {
                return Err(invalid("non-empty grid", format!("{name} has no values")));
            }
            if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return Err(invalid(
                    "positive temperatures",
                    format!("{name} contains {bad}"),
                ));
            }
            if let Some(w) = values.windows(2).find(|w| w[1] <= w[0]) {
                return Err(invalid(
                    "ascending grid",
                    format!("{name}: {} followed by {}", w[0], w[1]),
                ));
            }
        }
        Ok(SweepGrid {
            t0_values,
            t_values,
            spacing,
        })
    }

    pub fn from_ranges(
        t0: (f64, f64, usize),
        t: (f64, f64, usize),
        spacing: Spacing,
    ) -> Result<Self, CliError> {
        let a = expand_axis(
            "t0",
            &AxisSpec::Range {
                min: t0.0,
                max: t0.1,
                n: t0.2,
            },
            spacing,
        )?;
        let b = expand_axis(
            "t",
            &AxisSpec::Range {
                min: t.0,
                max: t.1,
                n: t.2,
            },
            spacing,
        )?;
        Self::new(a, b, spacing)
    }

    /// `0.01..2`, 100 points per axis.
    pub fn default_grid(spacing: Spacing) -> Self {
        let r = (DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_POINTS);
        Self::from_ranges(r, r, spacing).expect("default grid is valid")
    }

    pub fn len(&self) -> usize {
        self.t0_values.len() * self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major points: `t0` outer, `t` inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.t0_values
            .iter()
            .flat_map(|&a| self.t_values.iter().map(move |&b| (a, b)))
            .collect()
    }
}

/// Parses `t0_min:t0_max:n,t_min:t_max:n`.
pub fn parse_grid_arg(arg: &str, spacing: Spacing) -> Result<SweepGrid, CliError> {
    let bad = |reason: &str| CliError::GridArg {
        arg: arg.to_string(),
        reason: reason.to_string(),
    };
    let axes: Vec<&str> = arg.split(',').collect();
    if axes.len() != 2 {
        return Err(bad("expected two comma-separated axes"));
    }
    let mut parsed = Vec::with_capacity(2);
    for axis in axes {
        let parts: Vec<&str> = axis.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(bad("each axis must be min:max:n"));
        }
        let min: f64 = parts[0].parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = parts[1].parse().map_err(|_| bad("max is not a number"))?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| bad("n is not a non-negative integer"))?;
        parsed.push((min, max, n));
    }
    SweepGrid::from_ranges(parsed[0], parsed[1], spacing)
}

impl ModelConfig {
    /// Validated thermal model described by this config.
    pub fn to_model(&self) -> Result<ThermalModel, CliError> {
        let hamiltonian = match (&self.energies, &self.matrix) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(invalid(
                    "exactly one of energies/matrix",
                    "give either `energies` or `matrix`",
                ));
            }
            (Some(e), None) => {
                if e.is_empty() {
                    return Err(invalid("non-empty Hamiltonian", "energies is empty"));
                }
                if let Some(bad) = e.iter().find(|x| !x.is_finite()) {
                    return Err(invalid("finite energies", format!("energy {bad}")));
                }
                HermitianOperator::from_real_diagonal(e)
            }
            (None, Some(rows)) => {
                let rows: Vec<Vec<Complex64>> = rows
                    .iter()
                    .map(|r| r.iter().map(MatrixEntry::value).collect())
                    .collect();
                let m = ComplexMatrix::from_rows(&rows)
                    .map_err(|e| invalid("square matrix", e.to_string()))?;
                if m.as_slice()
                    .iter()
                    .any(|z| !(z.re.is_finite() && z.im.is_finite()))
                {
                    return Err(invalid(
                        "finite matrix entries",
                        "matrix contains a non-finite entry",
                    ));
                }
                validate_hermitian(m).map_err(|e| invalid("hermitian matrix", e.to_string()))?
            }
        };
        let sectors = SectorDecomposition::new(hamiltonian.dim(), self.sectors.clone())
            .map_err(|e| invalid(sector_invariant(&e), e.to_string()))?;
        ThermalModel::new(hamiltonian, sectors)
            .map_err(|e| invalid("block compatibility", e.to_string()))
    }

    pub fn grid(&self) -> Result<SweepGrid, CliError> {
        match &self.grid {
            None => Ok(SweepGrid::default_grid(Spacing::Linear)),
            Some(g) => SweepGrid::new(
                expand_axis("t0", &g.t0, g.spacing)?,
                expand_axis("t", &g.t, g.spacing)?,
                g.spacing,
            ),
        }
    }
}

fn sector_invariant(e: &CoreError) -> &'static str {
    match e {
        CoreError::OverlappingSectors { .. } => "overlapping sectors",
        CoreError::IncompletePartition { .. } => "incomplete partition",
        CoreError::EmptySector { .. } => "non-empty sectors",
        CoreError::SectorIndexOutOfRange { .. } => "sector index range",
        _ => "sector decomposition",
    }
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<(ModelConfig, SweepGrid), CliError> {
    let config: ModelConfig = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    config.to_model()?;
    let grid = config.grid()?;
    Ok((config, grid))
}

pub fn load_config(path: &Path) -> Result<(ModelConfig, SweepGrid), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}
