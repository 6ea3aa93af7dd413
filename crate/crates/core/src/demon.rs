//! Maxwell-demon circuit on system ⊗ register.
//!
//! The register has one fiducial level `|0⟩` plus one level per sector;
//! sector `n` is recorded on level `n + 1`. Composite states use
//! system-major ordering: basis index `s * register_dim + r`.
//!
//! Circuits:
//!
//! - demon `Φ_D`: correlate sectors with the register via `U`, measure the
//!   register, thermalize the system within the recorded sector.
//! - unitary reset `U_R = U†`: returns the record to the system, leaving
//!   `ρ_SS ⊗ |0⟩⟨0|`.
//! - Landauer erasure `Φ_LE`: thermalizes the system, `ω^β ⊗ ρ_reg`.
//! - register reset `Φ_R`: `ρ_sys ⊗ |0⟩⟨0|`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{trace_distance, ComplexMatrix, HermitianOperator};
use crate::thermal::{
    gibbs_state, s_thermalize, sector_gibbs_states, sector_probabilities, shannon_entropy,
    von_neumann_entropy, DensityMatrix, SectorDecomposition, Temperature, ThermalModel,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterSpec {
    num_sectors: usize,
}

impl RegisterSpec {
    pub fn new(num_sectors: usize) -> Result<Self> {
        if num_sectors == 0 {
            return Err(Error::SpecMismatch {
                sectors: 0,
                register_sectors: 0,
            });
        }
        Ok(RegisterSpec { num_sectors })
    }

    pub fn for_sectors(sectors: &SectorDecomposition) -> Self {
        RegisterSpec {
            num_sectors: sectors.len(),
        }
    }

    pub fn num_sectors(&self) -> usize {
        self.num_sectors
    }

    pub fn register_dim(&self) -> usize {
        self.num_sectors + 1
    }

    pub fn level_of_sector(&self, sector: usize) -> usize {
        sector + 1
    }

    fn check(&self, sectors: &SectorDecomposition) -> Result<()> {
        if sectors.len() != self.num_sectors {
            return Err(Error::SpecMismatch {
                sectors: sectors.len(),
                register_sectors: self.num_sectors,
            });
        }
        Ok(())
    }
}

/// Density matrix on system ⊗ register, system-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    state: DensityMatrix,
    system_dim: usize,
    register: RegisterSpec,
}

impl CompositeState {
    pub fn new(state: DensityMatrix, system_dim: usize, register: RegisterSpec) -> Result<Self> {
        let expected = system_dim * register.register_dim();
        if state.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: state.dim(),
            });
        }
        Ok(CompositeState {
            state,
            system_dim,
            register,
        })
    }

    /// `ρ ⊗ |0⟩⟨0|`.
    pub fn with_fiducial_register(system: &DensityMatrix, register: RegisterSpec) -> Result<Self> {
        let fiducial =
            ComplexMatrix::from_real_diagonal(&basis_populations(register.register_dim(), 0));
        Self::from_matrix(system.matrix().kron(&fiducial), system.dim(), register)
    }

    fn from_matrix(m: ComplexMatrix, system_dim: usize, register: RegisterSpec) -> Result<Self> {
        let state = DensityMatrix::from_operator(crate::linalg::validate_hermitian(m)?)?;
        Self::new(state, system_dim, register)
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    pub fn register(&self) -> RegisterSpec {
        self.register
    }

    fn idx(&self, s: usize, r: usize) -> usize {
        s * self.register.register_dim() + r
    }

    /// `Tr_reg`.
    pub fn system_marginal(&self) -> Result<DensityMatrix> {
        let (ns, nr) = (self.system_dim, self.register.register_dim());
        let m = self.state.matrix();
        let mut out = ComplexMatrix::zeros(ns);
        for s in 0..ns {
            for t in 0..ns {
                out[(s, t)] = (0..nr).map(|r| m[(self.idx(s, r), self.idx(t, r))]).sum();
            }
        }
        density(out)
    }

    /// `Tr_sys`.
    pub fn register_marginal(&self) -> Result<DensityMatrix> {
        let (ns, nr) = (self.system_dim, self.register.register_dim());
        let m = self.state.matrix();
        let mut out = ComplexMatrix::zeros(nr);
        for r in 0..nr {
            for q in 0..nr {
                out[(r, q)] = (0..ns).map(|s| m[(self.idx(s, r), self.idx(s, q))]).sum();
            }
        }
        density(out)
    }

    /// Unnormalized system block `⟨r|ρ|r⟩` for register level `r`.
    fn register_block(&self, r: usize) -> ComplexMatrix {
        let ns = self.system_dim;
        let m = self.state.matrix();
        let mut out = ComplexMatrix::zeros(ns);
        for s in 0..ns {
            for t in 0..ns {
                out[(s, t)] = m[(self.idx(s, r), self.idx(t, r))];
            }
        }
        out
    }

    /// `(pᵣ, ρ_sys|r)` for every register level with non-zero weight.
    pub fn conditional_system_states(&self) -> Result<Vec<(usize, f64, DensityMatrix)>> {
        let mut out = Vec::new();
        for r in 0..self.register.register_dim() {
            let block = self.register_block(r);
            let weight = block.trace().re;
            if weight > 0.0 {
                out.push((r, weight, density(block.scale(1.0 / weight))?));
            }
        }
        Ok(out)
    }

    fn apply_unitary(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::from_matrix(
            self.state.matrix().conjugate_by(u),
            self.system_dim,
            self.register,
        )
    }
}

fn basis_populations(dim: usize, k: usize) -> Vec<f64> {
    let mut p = vec![0.0; dim];
    p[k] = 1.0;
    p
}

fn density(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::from_operator(crate::linalg::validate_hermitian(m)?)
}

/// `U = Σₙ ℙₙ ⊗ (|n+1⟩⟨0| + |0⟩⟨n+1| + Σ_{k∉{0,n+1}} |k⟩⟨k|)`.
pub fn correlate_unitary(
    sectors: &SectorDecomposition,
    reg: RegisterSpec,
) -> Result<ComplexMatrix> {
    reg.check(sectors)?;
    let (ns, nr) = (sectors.dim(), reg.register_dim());
    let one = Complex64::new(1.0, 0.0);
    let mut u = ComplexMatrix::zeros(ns * nr);
    for s in 0..ns {
        let level = reg.level_of_sector(sectors.label_of(s));
        for r in 0..nr {
            let target = if r == 0 {
                level
            } else if r == level {
                0
            } else {
                r
            };
            u[(s * nr + target, s * nr + r)] = one;
        }
    }
    Ok(u)
}

/// `Φ_D`: correlate, measure the register, thermalize within the recorded sector.
///
/// Output is `Σₙ pₙ ωₙ^β ⊗ |n+1⟩⟨n+1|` with `pₙ = Tr(ℙₙ ρ₀)`.
pub fn demon_channel(
    model: &ThermalModel,
    rho0: &DensityMatrix,
    temp: Temperature,
    reg: RegisterSpec,
) -> Result<CompositeState> {
    reg.check(model.sectors())?;
    if rho0.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: rho0.dim(),
        });
    }
    let u = correlate_unitary(model.sectors(), reg)?;
    let correlated = CompositeState::with_fiducial_register(rho0, reg)?.apply_unitary(&u)?;
    let sector_states = sector_gibbs_states(model, temp)?;

    let nr = reg.register_dim();
    let mut out = ComplexMatrix::zeros(model.dim() * nr);
    for r in 0..nr {
        // projective register measurement: only diagonal register blocks survive
        let block = correlated.register_block(r);
        let weight = block.trace().re;
        let conditional = if r == 0 {
            block
        } else {
            sector_states[r - 1].matrix().scale(weight)
        };
        let label = ComplexMatrix::from_real_diagonal(&basis_populations(nr, r));
        out = out.add(&conditional.kron(&label));
    }
    CompositeState::from_matrix(out, model.dim(), reg)
}

/// `U_R = U†` applied to the composite.
pub fn reset_unitary_path(
    composite: &CompositeState,
    sectors: &SectorDecomposition,
    reg: RegisterSpec,
) -> Result<CompositeState> {
    let u = correlate_unitary(sectors, reg)?;
    composite.apply_unitary(&u.adjoint())
}

/// `Φ_LE`: thermalize the system at `temp`, keep the register marginal.
pub fn landauer_erase(
    composite: &CompositeState,
    model: &ThermalModel,
    temp: Temperature,
) -> Result<CompositeState> {
    if composite.system_dim != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: composite.system_dim,
        });
    }
    let gibbs = gibbs_state(model.hamiltonian(), temp)?;
    let register = composite.register_marginal()?;
    CompositeState::from_matrix(
        gibbs.matrix().kron(register.matrix()),
        composite.system_dim,
        composite.register,
    )
}

/// `Φ_R`: reset the register to `|0⟩`, leaving the system marginal unchanged.
pub fn register_reset(composite: &CompositeState, reg: RegisterSpec) -> Result<CompositeState> {
    if reg != composite.register {
        return Err(Error::SpecMismatch {
            sectors: composite.register.num_sectors,
            register_sectors: reg.num_sectors,
        });
    }
    CompositeState::with_fiducial_register(&composite.system_marginal()?, reg)
}

/// `S(ρ_sys) + S(ρ_reg) − S(ρ_sys,reg)`.
pub fn mutual_information(
    composite: &CompositeState,
    system_dim: usize,
    reg: RegisterSpec,
) -> Result<f64> {
    if system_dim != composite.system_dim || reg != composite.register {
        return Err(Error::DimensionMismatch {
            expected: composite.system_dim * composite.register.register_dim(),
            found: system_dim * reg.register_dim(),
        });
    }
    let sys = von_neumann_entropy(&composite.system_marginal()?);
    let reg_s = von_neumann_entropy(&composite.register_marginal()?);
    Ok(sys + reg_s - von_neumann_entropy(&composite.state))
}

/// One circuit check: measured residual against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CircuitCheck {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        CircuitCheck {
            name: name.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

/// Runs every pathway and consistency check of the circuit with `ρ₀ = ω^{β₀}`.
pub fn verify_circuit(
    model: &ThermalModel,
    t0: Temperature,
    t: Temperature,
) -> Result<Vec<CircuitCheck>> {
    let reg = RegisterSpec::for_sectors(model.sectors());
    let h = model.hamiltonian();
    let rho0 = gibbs_state(h, t0)?;
    let gibbs = gibbs_state(h, t)?;
    let rho_ss = s_thermalize(model, &rho0, t)?;
    let probs = sector_probabilities(&rho0, model.sectors())?;
    let h_sectors = shannon_entropy(&probs)?;

    let u = correlate_unitary(model.sectors(), reg)?;
    let ident = ComplexMatrix::identity(u.dim());
    let unitarity = u.adjoint().matmul(&u).sub(&ident).max_abs();

    let start = CompositeState::with_fiducial_register(&rho0, reg)?;
    let round_trip = reset_unitary_path(&start.apply_unitary(&u)?, model.sectors(), reg)?;
    let inverse = round_trip
        .state
        .matrix()
        .sub(start.state.matrix())
        .max_abs();

    let demon = demon_channel(model, &rho0, t, reg)?;
    let demon_marginal = demon.system_marginal()?;
    let consistency = trace_distance(demon_marginal.op(), rho_ss.op())?;

    // ensemble entropy Σ pₙ S(ωₙ^β) read off the register branches
    let branches = demon.conditional_system_states()?;
    let ensemble: f64 = branches
        .iter()
        .map(|(_, w, s)| w * von_neumann_entropy(s))
        .sum();
    let entropy_drop = von_neumann_entropy(&rho_ss) - ensemble;
    let demon_mi = mutual_information(&demon, model.dim(), reg)?;

    // pathway (b): unitary reset then thermalization
    let reset = reset_unitary_path(&demon, model.sectors(), reg)?;
    let reset_sys = reset.system_marginal()?;
    let reset_reg_purity = reset.register_marginal()?.purity();
    let reset_entropy =
        (von_neumann_entropy(&reset.state) - von_neumann_entropy(&demon.state)).abs();
    let path_b = landauer_erase(&reset, model, t)?.system_marginal()?;

    // pathway (c): Landauer erasure then register reset
    let erased = landauer_erase(&demon, model, t)?;
    let erased_mi = mutual_information(&erased, model.dim(), reg)?;
    let path_c_state = register_reset(&erased, reg)?;
    let path_c = path_c_state.system_marginal()?;
    let final_reg = path_c_state.register_marginal()?;

    Ok(vec![
        CircuitCheck::new("correlate_unitarity", unitarity, 1e-12),
        CircuitCheck::new("reset_inverts_correlation", inverse, 1e-12),
        CircuitCheck::new("demon_marginal_is_steady_state", consistency, 1e-12),
        CircuitCheck::new(
            "correlation_entropy_drop",
            (entropy_drop - h_sectors).abs(),
            1e-10,
        ),
        CircuitCheck::new(
            "demon_mutual_information",
            (demon_mi - h_sectors).abs(),
            1e-10,
        ),
        CircuitCheck::new(
            "reset_system_is_steady_state",
            trace_distance(reset_sys.op(), rho_ss.op())?,
            1e-12,
        ),
        CircuitCheck::new(
            "reset_register_purity",
            (reset_reg_purity - 1.0).abs(),
            1e-10,
        ),
        CircuitCheck::new("reset_entropy_change", reset_entropy, 1e-10),
        CircuitCheck::new(
            "pathway_b_is_gibbs",
            trace_distance(path_b.op(), gibbs.op())?,
            1e-10,
        ),
        CircuitCheck::new(
            "pathway_c_is_gibbs",
            trace_distance(path_c.op(), gibbs.op())?,
            1e-10,
        ),
        CircuitCheck::new(
            "pathway_equivalence",
            trace_distance(path_b.op(), path_c.op())?,
            1e-10,
        ),
        CircuitCheck::new("mutual_information_after_erasure", erased_mi.abs(), 1e-10),
        CircuitCheck::new(
            "register_returns_to_fiducial",
            (1.0 - final_reg.populations()[0]).abs(),
            1e-12,
        ),
    ])
}

/// Reduced register state, for callers that only need the record.
pub fn register_state(composite: &CompositeState) -> Result<HermitianOperator> {
    Ok(composite.register_marginal()?.op().clone())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    const LEVELS: [f64; 4] = [0.0, 0.1, 0.2, 1.0];

    fn parity_model() -> ThermalModel {
        let sectors = SectorDecomposition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        ThermalModel::from_energies(&LEVELS, sectors).unwrap()
    }

    fn t(v: f64) -> Temperature {
        Temperature::new(v).unwrap()
    }

    #[test]
    fn single_sector_unitary_swaps_fiducial_and_record() {
        let sectors = SectorDecomposition::trivial(2);
        let reg = RegisterSpec::for_sectors(&sectors);
        let u = correlate_unitary(&sectors, reg).unwrap();
        let rho = DensityMatrix::from_populations(&[0.3, 0.7]).unwrap();
        let out = CompositeState::with_fiducial_register(&rho, reg)
            .unwrap()
            .apply_unitary(&u)
            .unwrap();
        assert_eq!(
            out.register_marginal().unwrap().populations(),
            vec![0.0, 1.0]
        );
        assert_eq!(out.system_marginal().unwrap().populations(), vec![0.3, 0.7]);
    }

    #[test]
    fn unitary_rejects_mismatched_register() {
        let sectors = SectorDecomposition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let reg = RegisterSpec::new(3).unwrap();
        assert_eq!(
            correlate_unitary(&sectors, reg),
            Err(Error::SpecMismatch {
                sectors: 2,
                register_sectors: 3
            })
        );
    }

    #[test]
    fn block_diagonal_input_gives_register_diagonal_output() {
        let m = parity_model();
        let reg = RegisterSpec::for_sectors(m.sectors());
        let rho = gibbs_state(m.hamiltonian(), t(0.3)).unwrap();
        let u = correlate_unitary(m.sectors(), reg).unwrap();
        let out = CompositeState::with_fiducial_register(&rho, reg)
            .unwrap()
            .apply_unitary(&u)
            .unwrap();
        let r = out.register_marginal().unwrap();
        let p = sector_probabilities(&rho, m.sectors()).unwrap();
        assert!((r.populations()[1] - p[0]).abs() < 1e-15);
        assert!((r.populations()[2] - p[1]).abs() < 1e-15);
        assert!(r.matrix()[(1, 2)].norm() == 0.0);
    }

    #[test]
    fn demon_output_register_populations() {
        let m = parity_model();
        let reg = RegisterSpec::for_sectors(m.sectors());
        let rho0 = gibbs_state(m.hamiltonian(), t(0.05)).unwrap();
        let out = demon_channel(&m, &rho0, t(1.0), reg).unwrap();
        let pops = out.register_marginal().unwrap().populations();
        assert_eq!(pops[0], 0.0);
        assert!((pops[1] - 0.882_689_570_596_757_17).abs() < 1e-14);
        assert!((pops[2] - 0.117_310_429_403_242_83).abs() < 1e-14);
        let mi = mutual_information(&out, 4, reg).unwrap();
        assert!((mi - 0.361_531_735_226_251_61).abs() < 1e-10);
    }

    #[test]
    fn single_sector_demon_is_plain_thermalization() {
        let m = ThermalModel::from_energies(&LEVELS, SectorDecomposition::trivial(4)).unwrap();
        let reg = RegisterSpec::for_sectors(m.sectors());
        let rho0 = DensityMatrix::basis_state(4, 3);
        let out = demon_channel(&m, &rho0, t(0.8), reg).unwrap();
        let g = gibbs_state(m.hamiltonian(), t(0.8)).unwrap();
        assert!(trace_distance(out.system_marginal().unwrap().op(), g.op()).unwrap() < 1e-12);
        assert_eq!(
            out.register_marginal().unwrap().populations(),
            vec![0.0, 1.0]
        );
        let reset = reset_unitary_path(&out, m.sectors(), reg).unwrap();
        assert_eq!(
            reset.register_marginal().unwrap().populations(),
            vec![1.0, 0.0]
        );
    }

    #[test]
    fn erasure_leaves_product_with_sector_record() {
        let m = parity_model();
        let reg = RegisterSpec::for_sectors(m.sectors());
        let rho0 = gibbs_state(m.hamiltonian(), t(0.05)).unwrap();
        let erased =
            landauer_erase(&demon_channel(&m, &rho0, t(1.0), reg).unwrap(), &m, t(1.0)).unwrap();
        let pops = erased.register_marginal().unwrap().populations();
        let p = sector_probabilities(&rho0, m.sectors()).unwrap();
        assert_eq!(pops[0], 0.0);
        assert!((pops[1] - p[0]).abs() < 1e-14 && (pops[2] - p[1]).abs() < 1e-14);
        assert!(mutual_information(&erased, 4, reg).unwrap().abs() < 1e-10);
        let reset = register_reset(&erased, reg)
            .unwrap()
            .register_marginal()
            .unwrap()
            .populations();
        assert!((reset[0] - 1.0).abs() < 1e-14 && reset[1] == 0.0 && reset[2] == 0.0);
    }

    #[test]
    fn register_reset_preserves_system_marginal_of_entangled_input() {
        let reg = RegisterSpec::new(1).unwrap();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        // Bell-like state between a qubit system and the two register levels.
        let psi = [
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, s),
        ];
        let composite = CompositeState::new(DensityMatrix::pure(&psi).unwrap(), 2, reg).unwrap();
        let before = composite.system_marginal().unwrap();
        assert!((mutual_information(&composite, 2, reg).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-12);
        let after = register_reset(&composite, reg)
            .unwrap()
            .system_marginal()
            .unwrap();
        assert!(trace_distance(before.op(), after.op()).unwrap() < 1e-12);
    }

    #[test]
    fn full_verification_passes_on_parity_model() {
        for (a, b) in [(0.05, 1.0), (1.0, 0.05), (0.5, 0.5)] {
            for check in verify_circuit(&parity_model(), t(a), t(b)).unwrap() {
                assert!(check.passed(), "{check:?} at ({a}, {b})");
            }
        }
    }
}
