//! Work extractable from a battery state by unitaries.
//!
//! Single-copy ergotropy pairs the state's eigenvalues (descending) with the
//! Hamiltonian's energies (ascending). The asymptotic, per-copy value is
//! `S(ρ‖ω^{β*}) / β*`, where `ω^{β*}` is the Gibbs state with the same
//! entropy as `ρ`.

use alloc::vec::Vec;

use crate::linalg::{eigh, EigenSystem, HermitianOperator};
use crate::thermal::{
    boltzmann_weights, gibbs_state, internal_energy, relative_entropy, von_neumann_entropy,
    DensityMatrix, Temperature, SUPPORT_TOL,
};
use crate::{Error, Result};

/// Allowed `|S(ω^{β*}) − S(ρ)|` in nats.
pub const ENTROPY_MATCH_TOL: f64 = 1e-10;
/// States with entropy at or below this are treated as pure.
pub const ENTROPY_FLOOR: f64 = 1e-12;
/// Upper end of the bisection bracket in units of `1 / (E_max − E_min)`.
pub const BETA_MAX_SCALE: f64 = 1e6;

/// Passive state with the same spectrum as the input and the work released reaching it.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveDecomposition {
    pub passive_state: DensityMatrix,
    pub extracted_work: f64,
    /// Eigenvalues of the input, largest first; entry `k` sits on the `k`-th lowest level.
    pub sorted_populations: Vec<f64>,
}

pub fn passive_state(rho: &DensityMatrix, h: &HermitianOperator) -> Result<PassiveDecomposition> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    let levels = eigh(h)?;
    let mut sorted_populations: Vec<f64> = rho.spectrum().to_vec();
    sorted_populations.sort_by(|a, b| b.total_cmp(a));

    let passive_energy: f64 = sorted_populations
        .iter()
        .zip(&levels.eigenvalues)
        .map(|(p, e)| p * e)
        .sum();
    let extracted_work = (internal_energy(rho, h)? - passive_energy).max(0.0);

    // populations listed in the same column order as the energy eigenvectors
    let paired = EigenSystem {
        eigenvalues: sorted_populations.clone(),
        eigenvectors: levels.eigenvectors,
    };
    let passive = HermitianOperator::from_hermitian_unchecked(paired.reconstruct_with(|p| p));
    let passive_state = DensityMatrix::from_operator(passive)?;
    Ok(PassiveDecomposition {
        passive_state,
        extracted_work,
        sorted_populations,
    })
}

/// Single-copy ergotropy `E(ρ) − min_U E(UρU†)`.
pub fn ergotropy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    Ok(passive_state(rho, h)?.extracted_work)
}

/// Inverse temperature of the Gibbs state whose entropy matches `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTemperature {
    /// `f64::INFINITY` marks an effectively pure state.
    pub beta_star: f64,
    /// `S(ω^{β*}) − S(ρ)`.
    pub entropy_residual: f64,
}

impl EffectiveTemperature {
    pub fn is_infinite(&self) -> bool {
        self.beta_star.is_infinite()
    }
}

fn gibbs_entropy(energies: &[f64], beta: f64) -> f64 {
    -boltzmann_weights(energies, beta)
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| w * libm::log(w))
        .sum::<f64>()
}

/// Bisection on the monotone decreasing map `β ↦ S(ω^β)` over `[0, β_max]`.
pub fn effective_inverse_temperature(
    rho: &DensityMatrix,
    h: &HermitianOperator,
) -> Result<EffectiveTemperature> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    let energies = eigh(h)?.eigenvalues;
    let (e_min, e_max) = (energies[0], energies[energies.len() - 1]);
    let spread = e_max - e_min;
    let scale = e_min.abs().max(e_max.abs()).max(1.0);
    if spread <= 1e-12 * scale {
        return Err(Error::DegenerateHamiltonian);
    }

    let target = von_neumann_entropy(rho);
    let max_entropy = libm::log(rho.dim() as f64);
    let beta_max = BETA_MAX_SCALE / spread;
    let floor_entropy = gibbs_entropy(&energies, beta_max);

    if target <= ENTROPY_FLOOR || target < floor_entropy {
        return Ok(EffectiveTemperature {
            beta_star: f64::INFINITY,
            entropy_residual: floor_entropy - target,
        });
    }
    if (target - max_entropy).abs() <= ENTROPY_MATCH_TOL {
        return Ok(EffectiveTemperature {
            beta_star: 0.0,
            entropy_residual: max_entropy - target,
        });
    }
    if target > max_entropy {
        return Err(Error::BracketFailure {
            target_entropy: target,
        });
    }

    let residual = |beta: f64| gibbs_entropy(&energies, beta) - target;
    let (mut lo, mut hi) = (0.0f64, beta_max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        if residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (r_lo, r_hi) = (residual(lo), residual(hi));
    let (beta_star, entropy_residual) = if r_lo.abs() <= r_hi.abs() {
        (lo, r_lo)
    } else {
        (hi, r_hi)
    };
    Ok(EffectiveTemperature {
        beta_star,
        entropy_residual,
    })
}

/// Regularized per-copy ergotropy `S(ρ‖ω^{β*}) / β*`.
pub fn asymptotic_ergotropy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    let eff = effective_inverse_temperature(rho, h)?;
    if eff.is_infinite() {
        return Err(Error::PureStateLimit);
    }
    if eff.beta_star == 0.0 {
        let to_mixed = libm::log(rho.dim() as f64) - von_neumann_entropy(rho);
        if to_mixed > SUPPORT_TOL {
            return Err(Error::DegenerateEffectiveTemperature {
                relative_entropy: to_mixed,
            });
        }
        return Ok(0.0);
    }
    let reference = gibbs_state(h, Temperature::new(1.0 / eff.beta_star)?)?;
    Ok(relative_entropy(rho, &reference)? / eff.beta_star)
}

/// Asymptotic minus single-copy ergotropy.
pub fn excess_ergotropy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    Ok(asymptotic_ergotropy(rho, h)? - ergotropy(rho, h)?)
}
