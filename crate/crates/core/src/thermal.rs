//! Gibbs states, symmetry sectors and the s-thermalized steady state.
//!
//! A [`ThermalModel`] pairs a Hamiltonian with a partition of basis indices
//! into symmetry sectors. The Hamiltonian must not couple different sectors.
//! Thermalizing under that symmetry keeps the weight `pᵢ = Tr(ℙᵢ ρ₀)` of each
//! sector and relaxes each block to its own Gibbs state:
//!
//! ```text
//! ρ_SS = Σᵢ pᵢ ωᵢ^β,   ωᵢ^β = ℙᵢ e^{−βH} ℙᵢ / Tr(ℙᵢ e^{−βH})
//! ```

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{eigh, validate_hermitian, ComplexMatrix, EigenSystem, HermitianOperator};
use crate::{Error, Result};

/// Allowed `|Tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[−NEGATIVE_EIGENVALUE_TOL, 0)` are round-off and clamp to zero.
pub const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-12;
/// Support threshold for relative entropy.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Largest Hamiltonian entry tolerated between different sectors.
pub const BLOCK_TOL: f64 = 1e-10;

/// Strictly positive, finite temperature (`k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Temperature(value))
        } else {
            Err(Error::InvalidTemperature { value })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn beta(self) -> f64 {
        1.0 / self.0
    }
}

/// Unit-trace positive semidefinite operator with its spectral decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
    eigen: EigenSystem,
    /// Exact `ln` of each eigenvalue when known analytically (Gibbs states).
    log_eigen: Option<Vec<f64>>,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::from_operator(validate_hermitian(m)?)
    }

    pub fn from_operator(op: HermitianOperator) -> Result<Self> {
        let trace = op.trace();
        if !trace.is_finite() || (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let mut eigen = eigh(&op)?;
        if let Some(&lowest) = eigen.eigenvalues.first() {
            if lowest < -NEGATIVE_EIGENVALUE_TOL {
                return Err(Error::NegativeEigenvalue { value: lowest });
            }
        }
        for x in eigen.eigenvalues.iter_mut() {
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        Ok(DensityMatrix {
            op,
            eigen,
            log_eigen: None,
        })
    }

    /// Diagonal state with the given populations.
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        Self::from_operator(HermitianOperator::from_real_diagonal(populations))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_populations(&vec![1.0 / dim as f64; dim])
            .expect("uniform populations are a valid state")
    }

    /// `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut p = vec![0.0; dim];
        p[k] = 1.0;
        Self::from_populations(&p).expect("basis projector is a valid state")
    }

    /// `|ψ⟩⟨ψ|` for a normalized vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let n = psi.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    /// Eigenvalues ascending, round-off negatives clamped to zero.
    pub fn spectrum(&self) -> &[f64] {
        &self.eigen.eigenvalues
    }

    /// Diagonal entries in the computational basis.
    pub fn populations(&self) -> Vec<f64> {
        self.op.diagonal()
    }

    /// Whether the state carries exact log-eigenvalues (full rank by construction).
    pub fn has_exact_log_spectrum(&self) -> bool {
        self.log_eigen.is_some()
    }

    pub fn purity(&self) -> f64 {
        self.op.trace_product(&self.op)
    }
}

/// Partition of `{0..dim}` into ordered, disjoint, non-empty index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorDecomposition {
    dim: usize,
    sectors: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

impl SectorDecomposition {
    pub fn new(dim: usize, sectors: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; dim];
        for (s, indices) in sectors.iter().enumerate() {
            if indices.is_empty() {
                return Err(Error::EmptySector { sector: s });
            }
            for &i in indices {
                if i >= dim {
                    return Err(Error::SectorIndexOutOfRange { index: i, dim });
                }
                if labels[i] != usize::MAX {
                    return Err(Error::OverlappingSectors { index: i });
                }
                labels[i] = s;
            }
        }
        if let Some(missing) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::IncompletePartition { missing });
        }
        Ok(SectorDecomposition {
            dim,
            sectors,
            labels,
        })
    }

    /// One sector holding every index (no symmetry constraint).
    pub fn trivial(dim: usize) -> Self {
        Self::new(dim, vec![(0..dim).collect()]).expect("single full sector is a partition")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn sectors(&self) -> &[Vec<usize>] {
        &self.sectors
    }

    pub fn sector(&self, index: usize) -> Result<&[usize]> {
        self.sectors
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::InvalidSector {
                index,
                count: self.sectors.len(),
            })
    }

    /// Sector containing basis index `i`.
    pub fn label_of(&self, i: usize) -> usize {
        self.labels[i]
    }
}

/// Hamiltonian that is block-diagonal with respect to a sector decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalModel {
    hamiltonian: HermitianOperator,
    sectors: SectorDecomposition,
}

impl ThermalModel {
    pub fn new(hamiltonian: HermitianOperator, sectors: SectorDecomposition) -> Result<Self> {
        let n = hamiltonian.dim();
        if sectors.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sectors.dim(),
            });
        }
        let m = hamiltonian.matrix();
        for row in 0..n {
            for col in 0..n {
                if sectors.label_of(row) != sectors.label_of(col) {
                    let magnitude = m[(row, col)].norm();
                    if magnitude > BLOCK_TOL {
                        return Err(Error::CrossSectorCoupling {
                            row,
                            col,
                            magnitude,
                        });
                    }
                }
            }
        }
        Ok(ThermalModel {
            hamiltonian,
            sectors,
        })
    }

    /// Diagonal Hamiltonian with the given level energies.
    pub fn from_energies(energies: &[f64], sectors: SectorDecomposition) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(energies), sectors)
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    pub fn sectors(&self) -> &SectorDecomposition {
        &self.sectors
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }
}

/// Normalized Boltzmann weights, shifted by the lowest energy before exponentiating.
pub fn boltzmann_weights(energies: &[f64], beta: f64) -> Vec<f64> {
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let mut w: Vec<f64> = energies
        .iter()
        .map(|&e| libm::exp(-beta * (e - e_min)))
        .collect();
    let z: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= z;
    }
    w
}

fn thermal_from_eigen(eig: &EigenSystem, beta: f64) -> ComplexMatrix {
    let e_min = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let z: f64 = eig
        .eigenvalues
        .iter()
        .map(|&e| libm::exp(-beta * (e - e_min)))
        .sum();
    eig.reconstruct_with(|e| libm::exp(-beta * (e - e_min)) / z)
}

/// `ω^β = e^{−βH} / Tr e^{−βH}`.
///
/// The state shares the eigenvectors of `H` and keeps `ln` of its weights,
/// so it stays full rank for relative-entropy purposes even when the
/// weights of high levels underflow.
pub fn gibbs_state(h: &HermitianOperator, temp: Temperature) -> Result<DensityMatrix> {
    let levels = eigh(h)?;
    let beta = temp.beta();
    let e_min = levels.eigenvalues.first().copied().unwrap_or(0.0);
    let log_z = libm::log(
        levels
            .eigenvalues
            .iter()
            .map(|&e| libm::exp(-beta * (e - e_min)))
            .sum::<f64>(),
    );
    let log_weight = |e: f64| -beta * (e - e_min) - log_z;

    let op = HermitianOperator::from_hermitian_unchecked(
        levels.reconstruct_with(|e| libm::exp(log_weight(e))),
    );
    // weights ascend as energies descend
    let n = levels.eigenvalues.len();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for col in 0..n {
        for row in 0..n {
            eigenvectors[(row, col)] = levels.eigenvectors[(row, n - 1 - col)];
        }
    }
    let logs: Vec<f64> = levels
        .eigenvalues
        .iter()
        .rev()
        .map(|&e| log_weight(e))
        .collect();
    let eigen = EigenSystem {
        eigenvalues: logs.iter().map(|&l| libm::exp(l)).collect(),
        eigenvectors,
    };
    Ok(DensityMatrix {
        op,
        eigen,
        log_eigen: Some(logs),
    })
}

/// `ln Tr e^{−βH}`.
pub fn log_partition_function(h: &HermitianOperator, temp: Temperature) -> Result<f64> {
    let eig = eigh(h)?;
    let beta = temp.beta();
    let e_min = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let shifted: f64 = eig
        .eigenvalues
        .iter()
        .map(|&e| libm::exp(-beta * (e - e_min)))
        .sum();
    Ok(-beta * e_min + libm::log(shifted))
}

/// Gibbs state of `H` restricted to one sector, embedded back into the full space.
pub fn sector_gibbs(
    model: &ThermalModel,
    sector_index: usize,
    temp: Temperature,
) -> Result<DensityMatrix> {
    let indices = model.sectors.sector(sector_index)?;
    let block =
        HermitianOperator::from_hermitian_unchecked(model.hamiltonian.matrix().submatrix(indices));
    let local = thermal_from_eigen(&eigh(&block)?, temp.beta());
    let mut full = ComplexMatrix::zeros(model.dim());
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            full[(i, j)] = local[(a, b)];
        }
    }
    DensityMatrix::from_operator(HermitianOperator::from_hermitian_unchecked(full))
}

/// Every sector Gibbs state, in sector order.
pub fn sector_gibbs_states(model: &ThermalModel, temp: Temperature) -> Result<Vec<DensityMatrix>> {
    (0..model.sectors.len())
        .map(|i| sector_gibbs(model, i, temp))
        .collect()
}

/// `pᵢ = Tr(ℙᵢ ρ₀)`.
pub fn sector_probabilities(
    rho0: &DensityMatrix,
    sectors: &SectorDecomposition,
) -> Result<Vec<f64>> {
    if rho0.dim() != sectors.dim() {
        return Err(Error::DimensionMismatch {
            expected: sectors.dim(),
            found: rho0.dim(),
        });
    }
    let m = rho0.matrix();
    Ok(sectors
        .sectors()
        .iter()
        .map(|s| s.iter().map(|&i| m[(i, i)].re).sum())
        .collect())
}

/// Steady state of thermalization at `temp` constrained by the model's sectors.
pub fn s_thermalize(
    model: &ThermalModel,
    rho0: &DensityMatrix,
    temp: Temperature,
) -> Result<DensityMatrix> {
    let probs = sector_probabilities(rho0, &model.sectors)?;
    let states = sector_gibbs_states(model, temp)?;
    mix_sector_states(model.dim(), &probs, &states)
}

/// `Σᵢ pᵢ ωᵢ`.
pub(crate) fn mix_sector_states(
    dim: usize,
    probs: &[f64],
    states: &[DensityMatrix],
) -> Result<DensityMatrix> {
    let mut acc = ComplexMatrix::zeros(dim);
    for (&p, state) in probs.iter().zip(states) {
        if p != 0.0 {
            acc = acc.add(&state.matrix().scale(p));
        }
    }
    DensityMatrix::from_operator(HermitianOperator::from_hermitian_unchecked(acc))
}

/// `−Σ xᵢ ln xᵢ` with `0 ln 0 = 0`.
fn entropy_of(values: &[f64]) -> f64 {
    -values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * libm::log(x))
        .sum::<f64>()
}

/// `S(ρ) = −Tr ρ ln ρ` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of(rho.spectrum()).max(0.0)
}

/// `S(ρ‖σ) = Tr ρ (ln ρ − ln σ)`.
///
/// Directions where `σ` has eigenvalue at most [`SUPPORT_TOL`] must carry no
/// more than that weight of `ρ`, unless `σ` carries exact log-eigenvalues.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let n = rho.dim();
    if sigma.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: sigma.dim(),
        });
    }
    let (lam, v) = (&rho.eigen.eigenvalues, &rho.eigen.eigenvectors);
    let (mu, w) = (&sigma.eigen.eigenvalues, &sigma.eigen.eigenvectors);

    let mut cross = 0.0;
    for k in 0..n {
        // weight of rho along sigma's k-th eigenvector
        let mut mass = 0.0;
        for j in 0..n {
            if lam[j] == 0.0 {
                continue;
            }
            let mut overlap = Complex64::new(0.0, 0.0);
            for r in 0..n {
                overlap += v[(r, j)].conj() * w[(r, k)];
            }
            mass += lam[j] * overlap.norm_sqr();
        }
        if let Some(logs) = &sigma.log_eigen {
            cross += mass * logs[k];
            continue;
        }
        if mu[k] <= SUPPORT_TOL && mass > SUPPORT_TOL {
            return Err(Error::SupportViolation { weight: mass });
        }
        if mu[k] > 0.0 && mass > 0.0 {
            cross += mass * libm::log(mu[k]);
        }
    }
    let neg_entropy = -entropy_of(lam);
    Ok((neg_entropy - cross).max(0.0))
}

/// `E(ρ) = Tr(Hρ)`.
pub fn internal_energy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(h.trace_product(rho.op()))
}

/// `F(ρ) = E(ρ) − T S(ρ)` relative to a bath at `temp`.
pub fn free_energy(rho: &DensityMatrix, h: &HermitianOperator, temp: Temperature) -> Result<f64> {
    Ok(internal_energy(rho, h)? - temp.value() * von_neumann_entropy(rho))
}

/// `H(p) = −Σ pᵢ ln pᵢ`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let sum: f64 = p.iter().sum();
    if p.is_empty()
        || p.iter()
            .any(|&x| !x.is_finite() || x < -NEGATIVE_EIGENVALUE_TOL)
        || (sum - 1.0).abs() > TRACE_TOL
    {
        return Err(Error::NotAProbabilityVector);
    }
    Ok(entropy_of(p).max(0.0))
}
