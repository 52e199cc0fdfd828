use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NonHermitian { residual: f64 },
    NonFinite,
    BlochNormExceeded { norm: f64 },
    NotDensityMatrix(&'static str),
    InvalidProbabilities(&'static str),
    NonUnitVector { norm: f64 },
    NotQuantumClassical { residual: f64 },
    NotTracePreserving { residual: f64 },
    InvalidChannel(&'static str),
    NotPositive { excess: f64 },
    GammaOutOfRange(f64),
    OrderTooSmall(usize),
    SamplesTooSmall(usize),
    BudgetTooSmall(usize),
    DegenerateInput,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonHermitian { residual } => {
                write!(f, "matrix is not Hermitian (max |M - M†| = {residual:e})")
            }
            Error::NonFinite => write!(f, "input contains NaN or infinite entries"),
            Error::BlochNormExceeded { norm } => {
                write!(f, "Bloch vector norm {norm} exceeds 1")
            }
            Error::NotDensityMatrix(why) => write!(f, "not a density matrix: {why}"),
            Error::InvalidProbabilities(why) => write!(f, "invalid probabilities: {why}"),
            Error::NonUnitVector { norm } => write!(f, "expected a unit vector, got norm {norm}"),
            Error::NotQuantumClassical { residual } => write!(
                f,
                "state is not quantum-classical in the given basis (coherence {residual:e})"
            ),
            Error::NotTracePreserving { residual } => write!(
                f,
                "Kraus operators are not trace preserving (max |ΣK†K - I| = {residual:e})"
            ),
            Error::InvalidChannel(why) => write!(f, "invalid channel: {why}"),
            Error::NotPositive { excess } => write!(
                f,
                "affine map sends the Bloch ball outside itself (excess {excess:e})"
            ),
            Error::GammaOutOfRange(g) => write!(f, "damping parameter {g} outside [0, 1]"),
            Error::OrderTooSmall(n) => write!(f, "quadrature order {n} is below 2"),
            Error::SamplesTooSmall(n) => write!(f, "Monte Carlo sample count {n} is below 2"),
            Error::BudgetTooSmall(n) => write!(f, "oracle budget {n} is below 10000"),
            Error::DegenerateInput => write!(f, "degenerate input: both case denominators vanish"),
        }
    }
}

impl core::error::Error for Error {}
