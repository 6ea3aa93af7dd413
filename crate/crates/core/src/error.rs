use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the numerical core can report.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Entry count does not form a square matrix.
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NotHermitian {
        max_asymmetry: f64,
    },
    ConvergenceFailure {
        sweeps: usize,
        off_norm: f64,
    },
    NonFiniteResult,
    TraceNotOne {
        trace: f64,
    },
    NegativeEigenvalue {
        value: f64,
    },
    InvalidTemperature {
        value: f64,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    InvalidSector {
        index: usize,
        count: usize,
    },
    EmptySector {
        sector: usize,
    },
    SectorIndexOutOfRange {
        index: usize,
        dim: usize,
    },
    OverlappingSectors {
        index: usize,
    },
    IncompletePartition {
        missing: usize,
    },
    CrossSectorCoupling {
        row: usize,
        col: usize,
        magnitude: f64,
    },
    SupportViolation {
        weight: f64,
    },
    NotAProbabilityVector,
    BracketFailure {
        target_entropy: f64,
    },
    DegenerateEffectiveTemperature {
        relative_entropy: f64,
    },
    PureStateLimit,
    DegenerateHamiltonian,
    SpecMismatch {
        sectors: usize,
        register_sectors: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::NotHermitian { max_asymmetry } => {
                write!(f, "matrix is not Hermitian (max |A - A†| = {max_asymmetry:e})")
            }
            Error::ConvergenceFailure { sweeps, off_norm } => write!(
                f,
                "Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::NonFiniteResult => write!(f, "scalar function produced a non-finite value"),
            Error::TraceNotOne { trace } => write!(f, "density matrix trace is {trace}, expected 1"),
            Error::NegativeEigenvalue { value } => {
                write!(f, "density matrix has negative eigenvalue {value:e}")
            }
            Error::InvalidTemperature { value } => {
                write!(f, "temperature must be positive and finite, got {value}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidSector { index, count } => {
                write!(f, "sector index {index} out of range ({count} sectors)")
            }
            Error::EmptySector { sector } => write!(f, "sector {sector} is empty"),
            Error::SectorIndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} outside 0..{dim}")
            }
            Error::OverlappingSectors { index } => {
                write!(f, "overlapping sectors: basis index {index} appears more than once")
            }
            Error::IncompletePartition { missing } => {
                write!(f, "incomplete partition: basis index {missing} belongs to no sector")
            }
            Error::CrossSectorCoupling { row, col, magnitude } => write!(
                f,
                "Hamiltonian couples sectors: |H[{row},{col}]| = {magnitude:e}"
            ),
            Error::SupportViolation { weight } => write!(
                f,
                "support of rho not contained in support of sigma (weight {weight:e} on kernel)"
            ),
            Error::NotAProbabilityVector => write!(f, "not a probability vector"),
            Error::BracketFailure { target_entropy } => write!(
                f,
                "no Gibbs state matches entropy {target_entropy} within the bisection bracket"
            ),
            Error::DegenerateEffectiveTemperature { relative_entropy } => write!(
                f,
                "effective temperature is infinite but relative entropy to I/d is {relative_entropy:e}"
            ),
            Error::PureStateLimit => write!(f, "state is effectively pure; effective temperature is zero"),
            Error::DegenerateHamiltonian => write!(f, "Hamiltonian is fully degenerate"),
            Error::SpecMismatch { sectors, register_sectors } => write!(
                f,
                "register encodes {register_sectors} sectors but the decomposition has {sectors}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
