//! Energy and entropy bookkeeping for one (initial, bath) temperature pair.
//!
//! With `ρ₀` the initial state, `ρ_SS` its symmetry-constrained steady state
//! and `ω^β` the unconstrained Gibbs state of the bath temperature:
//!
//! ```text
//! E(ρ_SS) − E(ω^β) = T (S(ρ_SS) − S(ω^β) + S(ρ_SS‖ω^β))
//! ΔS_sys  = S(ω^β) − Σᵢ pᵢ S(ωᵢ^β)
//! ΔS_bath = β (E(ρ_SS) − E(ω^β))
//! ΔS_LE   = S(ρ_SS) − Σᵢ pᵢ S(ωᵢ^β) + S(ρ_SS‖ω^β) = ΔS_sys + ΔS_bath
//! λ       = (E(ρ_SS) − E(ω^{β₀})) / (E(ω^β) − E(ω^{β₀}))
//! ```

use alloc::vec::Vec;

use crate::thermal::{
    gibbs_state, internal_energy, relative_entropy, s_thermalize, sector_gibbs_states,
    sector_probabilities, shannon_entropy, von_neumann_entropy, DensityMatrix, Temperature,
    ThermalModel,
};
use crate::{Error, Result};

/// `|E(ω^β) − E(ω^{β₀})|` below which λ is undefined.
pub const DENOM_TOL: f64 = 1e-10;
/// Half-width of the break-even band around λ = 1.
pub const CLASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Amplified,
    Mitigated,
    BreakEven,
    Undefined,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Amplified => "Amplified",
            Classification::Mitigated => "Mitigated",
            Classification::BreakEven => "BreakEven",
            Classification::Undefined => "Undefined",
        }
    }
}

impl core::fmt::Display for Classification {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every scalar of the bookkeeping for one (T₀, T) point with `ρ₀ = ω^{β₀}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport {
    pub t0: Temperature,
    pub t: Temperature,
    pub e_ss: f64,
    pub e_gibbs: f64,
    pub e_initial: f64,
    pub s_ss: f64,
    pub s_gibbs: f64,
    pub s_initial: f64,
    pub rel_ent_ss_gibbs: f64,
    pub sector_probs: Vec<f64>,
    /// Shannon entropy of the sector probabilities.
    pub h_sectors: f64,
    /// `Σᵢ pᵢ S(ωᵢ^β)`.
    pub s_sector_ensemble: f64,
    pub delta_s_sys: f64,
    pub delta_s_bath: f64,
    pub erasure_cost: f64,
    /// `E(ρ_SS) − E(ω^β)` computed from traces.
    pub energy_gap_direct: f64,
    /// Same gap from entropies and relative entropy.
    pub energy_gap_info: f64,
    /// Same gap from `(ΔS_LE − ΔS_sys)/β`.
    pub energy_gap_erasure: f64,
    pub lambda: Option<f64>,
    pub lambda_entropy_form: Option<f64>,
    pub classification: Classification,
}

impl ThermoReport {
    /// `ΔS_LE − ΔS_sys`; zero exactly at balanced erasure.
    pub fn erasure_imbalance(&self) -> f64 {
        self.erasure_cost - self.delta_s_sys
    }

    /// Verdict from the sign of `ΔS_bath`.
    pub fn bath_verdict(&self) -> Classification {
        bath_verdict(self.delta_s_bath, self.t.beta(), self.t0.beta())
    }
}

/// `T (S(ρ_SS) − S(ω^β) + S(ρ_SS‖ω^β))`.
pub fn energy_gap_info(
    model: &ThermalModel,
    rho_ss: &DensityMatrix,
    temp: Temperature,
) -> Result<f64> {
    let gibbs = gibbs_state(model.hamiltonian(), temp)?;
    let bracket = von_neumann_entropy(rho_ss) - von_neumann_entropy(&gibbs)
        + relative_entropy(rho_ss, &gibbs)?;
    Ok(temp.value() * bracket)
}

/// System entropy change during erasure, `S(ω^β) − Σᵢ pᵢ S(ωᵢ^β)`.
pub fn delta_s_sys(model: &ThermalModel, sector_probs: &[f64], temp: Temperature) -> Result<f64> {
    if sector_probs.len() != model.sectors().len() {
        return Err(Error::DimensionMismatch {
            expected: model.sectors().len(),
            found: sector_probs.len(),
        });
    }
    shannon_entropy(sector_probs)?;
    let gibbs = gibbs_state(model.hamiltonian(), temp)?;
    Ok(von_neumann_entropy(&gibbs) - ensemble_entropy(model, sector_probs, temp)?)
}

/// Bath entropy change, `β (E(ρ_SS) − E(ω^β))`.
pub fn delta_s_bath(
    model: &ThermalModel,
    rho_ss: &DensityMatrix,
    temp: Temperature,
) -> Result<f64> {
    let gibbs = gibbs_state(model.hamiltonian(), temp)?;
    let h = model.hamiltonian();
    Ok(temp.beta() * (internal_energy(rho_ss, h)? - internal_energy(&gibbs, h)?))
}

/// Landauer erasure entropy `S(ρ_SS) − Σᵢ pᵢ S(ωᵢ^β) + S(ρ_SS‖ω^β)`.
pub fn erasure_cost(model: &ThermalModel, rho0: &DensityMatrix, temp: Temperature) -> Result<f64> {
    let probs = sector_probabilities(rho0, model.sectors())?;
    let rho_ss = s_thermalize(model, rho0, temp)?;
    let gibbs = gibbs_state(model.hamiltonian(), temp)?;
    Ok(
        von_neumann_entropy(&rho_ss) - ensemble_entropy(model, &probs, temp)?
            + relative_entropy(&rho_ss, &gibbs)?,
    )
}

/// `T (ΔS_LE − ΔS_sys)`.
pub fn energy_gap_from_erasure(
    model: &ThermalModel,
    rho0: &DensityMatrix,
    temp: Temperature,
) -> Result<f64> {
    let probs = sector_probabilities(rho0, model.sectors())?;
    let cost = erasure_cost(model, rho0, temp)?;
    Ok(temp.value() * (cost - delta_s_sys(model, &probs, temp)?))
}

/// Energy-form λ; `None` when the Gibbs-to-Gibbs energy change is below [`DENOM_TOL`].
pub fn amplification_ratio(
    model: &ThermalModel,
    rho0: &DensityMatrix,
    t0: Temperature,
    t: Temperature,
) -> Result<Option<f64>> {
    let h = model.hamiltonian();
    let e_initial = internal_energy(&gibbs_state(h, t0)?, h)?;
    let e_gibbs = internal_energy(&gibbs_state(h, t)?, h)?;
    let e_ss = internal_energy(&s_thermalize(model, rho0, t)?, h)?;
    Ok(energy_ratio(e_ss, e_gibbs, e_initial))
}

/// λ written through free energies relative to the initial temperature.
pub fn amplification_ratio_entropy_form(
    model: &ThermalModel,
    rho0: &DensityMatrix,
    t0: Temperature,
    t: Temperature,
) -> Result<Option<f64>> {
    let h = model.hamiltonian();
    let initial = gibbs_state(h, t0)?;
    let gibbs = gibbs_state(h, t)?;
    let rho_ss = s_thermalize(model, rho0, t)?;
    entropy_ratio(&rho_ss, &gibbs, &initial)
}

fn energy_ratio(e_ss: f64, e_gibbs: f64, e_initial: f64) -> Option<f64> {
    let denom = e_gibbs - e_initial;
    (denom.abs() >= DENOM_TOL).then(|| (e_ss - e_initial) / denom)
}

fn entropy_ratio(
    rho_ss: &DensityMatrix,
    gibbs: &DensityMatrix,
    initial: &DensityMatrix,
) -> Result<Option<f64>> {
    let s0 = von_neumann_entropy(initial);
    let num = von_neumann_entropy(rho_ss) - s0 + relative_entropy(rho_ss, initial)?;
    let denom = von_neumann_entropy(gibbs) - s0 + relative_entropy(gibbs, initial)?;
    Ok((denom.abs() >= DENOM_TOL).then(|| num / denom))
}

/// Verdict from λ with the [`CLASS_TOL`] break-even band.
pub fn classify_ratio(lambda: Option<f64>) -> Classification {
    match lambda {
        None => Classification::Undefined,
        Some(l) if !l.is_finite() => Classification::Undefined,
        Some(l) if l > 1.0 + CLASS_TOL => Classification::Amplified,
        Some(l) if l < 1.0 - CLASS_TOL => Classification::Mitigated,
        Some(_) => Classification::BreakEven,
    }
}

pub fn classify(report: &ThermoReport) -> Classification {
    classify_ratio(report.lambda)
}

/// Verdict from the sign of `ΔS_bath`.
///
/// Heating (`β < β₀`) amplifies when heat would flow from system to bath on
/// lifting the constraint (`ΔS_bath > 0`); cooling (`β > β₀`) flips the sign.
pub fn bath_verdict(delta_s_bath: f64, beta: f64, beta0: f64) -> Classification {
    let heating = if beta < beta0 {
        1.0
    } else if beta > beta0 {
        -1.0
    } else {
        return Classification::Undefined;
    };
    let signed = heating * delta_s_bath;
    if signed > 0.0 {
        Classification::Amplified
    } else if signed < 0.0 {
        Classification::Mitigated
    } else {
        Classification::BreakEven
    }
}

fn ensemble_entropy(model: &ThermalModel, probs: &[f64], temp: Temperature) -> Result<f64> {
    let states = sector_gibbs_states(model, temp)?;
    Ok(probs
        .iter()
        .zip(&states)
        .map(|(&p, s)| p * von_neumann_entropy(s))
        .sum())
}

/// Report for `ρ₀ = ω^{β₀}`.
pub fn build_report(model: &ThermalModel, t0: Temperature, t: Temperature) -> Result<ThermoReport> {
    Ok(steady_state_report(model, t0, t)?.0)
}

/// Report for `ρ₀ = ω^{β₀}` together with the steady state it describes.
pub fn steady_state_report(
    model: &ThermalModel,
    t0: Temperature,
    t: Temperature,
) -> Result<(ThermoReport, DensityMatrix)> {
    let h = model.hamiltonian();
    let initial = gibbs_state(h, t0)?;
    let gibbs = gibbs_state(h, t)?;
    let rho_ss = s_thermalize(model, &initial, t)?;
    let sector_probs = sector_probabilities(&initial, model.sectors())?;
    let h_sectors = shannon_entropy(&sector_probs)?;

    let e_ss = internal_energy(&rho_ss, h)?;
    let e_gibbs = internal_energy(&gibbs, h)?;
    let e_initial = internal_energy(&initial, h)?;
    let s_ss = von_neumann_entropy(&rho_ss);
    let s_gibbs = von_neumann_entropy(&gibbs);
    let s_initial = von_neumann_entropy(&initial);
    let rel_ent_ss_gibbs = relative_entropy(&rho_ss, &gibbs)?;
    let s_sector_ensemble = ensemble_entropy(model, &sector_probs, t)?;

    let delta_s_sys = s_gibbs - s_sector_ensemble;
    let energy_gap_direct = e_ss - e_gibbs;
    let delta_s_bath = t.beta() * energy_gap_direct;
    let erasure_cost = s_ss - s_sector_ensemble + rel_ent_ss_gibbs;
    let energy_gap_info = t.value() * (s_ss - s_gibbs + rel_ent_ss_gibbs);
    let energy_gap_erasure = t.value() * (erasure_cost - delta_s_sys);

    let lambda = energy_ratio(e_ss, e_gibbs, e_initial);
    let lambda_entropy_form = entropy_ratio(&rho_ss, &gibbs, &initial)?;
    let classification = classify_ratio(lambda);

    let report = ThermoReport {
        t0,
        t,
        e_ss,
        e_gibbs,
        e_initial,
        s_ss,
        s_gibbs,
        s_initial,
        rel_ent_ss_gibbs,
        sector_probs,
        h_sectors,
        s_sector_ensemble,
        delta_s_sys,
        delta_s_bath,
        erasure_cost,
        energy_gap_direct,
        energy_gap_info,
        energy_gap_erasure,
        lambda,
        lambda_entropy_form,
        classification,
    };
    Ok((report, rho_ss))
}
