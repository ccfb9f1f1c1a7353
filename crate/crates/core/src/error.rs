use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Coarse failure category, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Domain,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight vanishes on the unit circle near {re}{im:+}i")]
    ZeroOnCircle { re: f64, im: f64 },
    #[error("weight has a pole on the unit circle near {re}{im:+}i")]
    PoleOnCircle { re: f64, im: f64 },
    #[error("essential singularity centre must satisfy 0 < |a| < 1, got |a| = {modulus}")]
    BadCenter { modulus: f64 },
    #[error("singularity structure of this weight is not known in closed form")]
    UnknownStructure,
    #[error("invalid weight: {0}")]
    InvalidWeight(&'static str),
    #[error("node count {0} is not a power of two >= 64")]
    BadNodeCount(usize),
    #[error("Fourier tail of log w did not fall below tolerance (tail {tail:e})")]
    TailTooLarge { tail: f64 },
    #[error("point {re}{im:+}i lies outside the domain of the requested Szegő function")]
    OutOfDomain { re: f64, im: f64 },
    #[error("Laurent coefficients of F do not decay geometrically")]
    InsufficientDecay,
    #[error("radius {r} must lie strictly between rho = {rho} and 1")]
    BadRadius { r: f64, rho: f64 },
    #[error("series do not converge for n = {n} at r = {r}; need n >= {n_min}")]
    ConvergenceConditionViolated { n: usize, r: f64, n_min: usize },
    #[error("evaluation point lies within the exclusion band of a contour")]
    OnContour,
    #[error("kappa^2 representation returned a non-positive value {0:e}")]
    NegativeSquare(f64),
    #[error("recovered leading coefficient deviates from 1 by {0:e}")]
    LeadingCoeffMismatch(f64),
    #[error("moment quadrature did not stabilise before {nodes} nodes")]
    QuadratureStall { nodes: usize },
    #[error("Toeplitz positivity lost at degree {n}")]
    LostPositivity { n: usize },
    #[error("root finder did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("evaluation point within {dist:e} of a pole")]
    TooCloseToPole { dist: f64 },
    #[error("no zeros found near the predicted clock radius")]
    NoBulkZeros,
    #[error("arithmetic type of the pole arguments must be declared for every pole")]
    UndeclaredArithmeticType,
    #[error("Newton iteration for the saddle point diverged")]
    NewtonDiverged,
    #[error("operation needs at least one dominant pole")]
    NoPoles,
    #[error("degree {n} is below the minimum {min} for this analysis")]
    DegreeTooSmall { n: usize, min: usize },
    #[error("precision {0} is not available in this build")]
    UnsupportedPrecision(&'static str),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            ZeroOnCircle { .. } | PoleOnCircle { .. } | BadCenter { .. } | UnknownStructure
            | InvalidWeight(_) | BadNodeCount(_) | BadRadius { .. } | UndeclaredArithmeticType
            | NoPoles | UnsupportedPrecision(_) | DegreeTooSmall { .. } => ErrorClass::Config,
            OutOfDomain { .. } | ConvergenceConditionViolated { .. } | OnContour
            | TooCloseToPole { .. } | NoBulkZeros | InsufficientDecay | NoConvergence { .. } => {
                ErrorClass::Domain
            }
            TailTooLarge { .. } | NegativeSquare(_) | LeadingCoeffMismatch(_)
            | QuadratureStall { .. } | LostPositivity { .. } | NewtonDiverged => {
                ErrorClass::Numerical
            }
        }
    }
}
