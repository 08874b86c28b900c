use num_complex::Complex64 as C64;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("Lattice invariant violated: {0}")]
    Lattice(String),
    #[error("theta series did not converge within {max_terms} terms (tail bound {tail:e})")]
    Truncation { max_terms: usize, tail: f64 },
    #[error("{what}: argument {z} lies within {margin:e} of a pole")]
    PoleProximity { what: String, z: C64, margin: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate interpolation nodes: {0}")]
    DegenerateNodes(String),
    #[error("resonant character: |theta(b)| = {0:e}")]
    ResonantCharacter(f64),
    #[error("incompatible characters: {0}")]
    IncompatibleCharacters(String),
    #[error("singular Newton step at iteration {0}")]
    SingularStep(usize),
    #[error("no convergence after {iters} iterations (residual {residual:e})")]
    NoConvergence { iters: usize, residual: f64 },
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate vector: {0}")]
    DegenerateVector(String),
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Errors caused by the input rather than by a computation.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Lattice(_) | Error::Config(_) | Error::InvalidParams(_) | Error::InvalidArgument(_) | Error::Truncation { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pole(what: impl Into<String>, z: C64, margin: f64) -> Error {
    Error::PoleProximity { what: what.into(), z, margin }
}
