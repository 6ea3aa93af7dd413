//! Demon-circuit verification at one (T₀, T) point.

use std::io::Write;

use stherm_core::demon::{verify_circuit, CircuitCheck};
use stherm_core::thermal::{Temperature, ThermalModel};

use crate::CliError;

/// Runs every circuit check and prints one line per check.
///
/// Returns the checks; the caller maps any failure to exit code 1.
pub fn demon_check<W: Write>(
    model: &ThermalModel,
    t0: f64,
    t: f64,
    mut out: W,
) -> Result<Vec<CircuitCheck>, CliError> {
    let checks = verify_circuit(model, Temperature::new(t0)?, Temperature::new(t)?)?;
    for c in &checks {
        let verdict = if c.passed() { "ok" } else { "FAIL" };
        writeln!(
            out,
            "{:<36} residual={:<12.3e} tol={:.0e} {verdict}",
            c.name, c.residual, c.tolerance
        )?;
    }
    Ok(checks)
}

/// Name of the first failing check, if any.
pub fn first_failure(checks: &[CircuitCheck]) -> Option<&str> {
    checks.iter().find(|c| !c.passed()).map(|c| c.name.as_str())
}
