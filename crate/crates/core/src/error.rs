use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} out of [0, π] (got {value})")]
    ThetaOutOfRange { name: &'static str, value: f64 },

    #[error("{name} is not a finite number")]
    NonFinite { name: &'static str },

    #[error("direction must be a unit vector (norm = {norm})")]
    InvalidDirection { norm: f64 },

    #[error("frame vectors {first} and {second} are not orthogonal (dot product {dot:e})")]
    IncompatibleFrame { first: usize, second: usize, dot: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    InvalidState { norm_sqr: f64 },

    #[error("concurrence {0} out of [0, 1]")]
    InvalidConcurrence(f64),

    #[error("CHSH value {0} out of [2, 2√2]")]
    InvalidBeta(f64),

    #[error("S value {0} outside the KCBS spectral range [5−4√5, 2√5−5]")]
    InvalidS(f64),

    #[error("sin θ₁ sin θ₂ vanishes, cos Δφ is undetermined")]
    DegenerateAngles,

    #[error("concurrence {concurrence} unreachable at these polar angles (cos Δφ would be {cos_delta_phi})")]
    Infeasible { concurrence: f64, cos_delta_phi: f64 },

    #[error("grid size {0} too small (need at least 16)")]
    GridTooSmall(usize),

    #[error("resolution {0} too small (need at least 2)")]
    ResolutionTooSmall(usize),

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("no feasible grid cell")]
    NoFeasibleCell,
}
