#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stherm_core::linalg::{validate_hermitian, ComplexMatrix, HermitianOperator};
use stherm_core::thermal::{DensityMatrix, SectorDecomposition, ThermalModel};
use stherm_core::Complex64;

pub const LEVELS: [f64; 4] = [0.0, 0.1, 0.2, 1.0];

pub fn parity_model() -> ThermalModel {
    let sectors = SectorDecomposition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
    ThermalModel::from_energies(&LEVELS, sectors).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> HermitianOperator {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    validate_hermitian(m).unwrap()
}

/// Random partition of `0..dim` into `n` non-empty sectors.
pub fn random_sectors(rng: &mut impl Rng, dim: usize, n: usize) -> SectorDecomposition {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    let mut cuts: Vec<usize> = (1..dim).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(n - 1).collect();
    cuts.sort_unstable();
    let mut sectors = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(dim)) {
        let mut s = idx[start..c].to_vec();
        s.sort_unstable();
        sectors.push(s);
        start = c;
    }
    SectorDecomposition::new(dim, sectors).unwrap()
}

/// Random Hamiltonian that is block-diagonal (with dense, complex blocks) w.r.t. random sectors.
pub fn random_block_model(rng: &mut impl Rng, dim: usize, n_sectors: usize) -> ThermalModel {
    let sectors = random_sectors(rng, dim, n_sectors);
    let mut m = ComplexMatrix::zeros(dim);
    for s in sectors.sectors() {
        let block = random_hermitian(rng, s.len());
        for (a, &i) in s.iter().enumerate() {
            for (b, &j) in s.iter().enumerate() {
                m[(i, j)] = block.matrix()[(a, b)];
            }
        }
    }
    ThermalModel::new(validate_hermitian(m).unwrap(), sectors).unwrap()
}

/// The 10 seeded block-diagonal models (dims 3–8, 2–3 sectors).
pub fn seeded_block_models() -> Vec<ThermalModel> {
    let mut r = rng(0x5eed);
    (0..10)
        .map(|_| {
            let dim = r.gen_range(3..=8);
            let n = r.gen_range(2..=3);
            random_block_model(&mut r, dim, n)
        })
        .collect()
}

/// Random full-rank density matrix `A A† / Tr(A A†)`.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let mut a = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            a[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let m = a.matmul(&a.adjoint());
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr)).unwrap()
}

/// Random unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    stherm_core::linalg::eigh(&random_hermitian(rng, dim))
        .unwrap()
        .eigenvectors
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
