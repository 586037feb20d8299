use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("curves overlap or are closer than 1e-6 (separation {separation:.3e})")]
    Overlap { separation: f64 },

    #[error("source and target points coincide")]
    Coincidence,

    #[error("evaluation point at distance {distance:.3e} from the curve is inside the 1e-6 guard")]
    NearSurface { distance: f64 },

    #[error("modal truncation inadequate at M = {order}: tail ratio {ratio:.3e}")]
    Truncation { order: usize, ratio: f64 },

    #[error("singular mode m = {mode}: normalized determinant {det:.3e}")]
    SingularMode { mode: i32, det: f64 },

    #[error("{map} map has a pole in mode m = {mode} (Bessel zero near argument {zero:.9})")]
    Pole { map: &'static str, mode: i32, zero: f64 },

    #[error("linear solve failed (condition estimate {cond:.3e})")]
    Solve { cond: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate phase: {0}")]
    Degenerate(&'static str),

    #[error("config error in `{key}`: {msg}")]
    Config { key: String, msg: String },

    #[error("cache: {0}")]
    Cache(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Errors that mark a discrete exceptional λ. Sweeps skip these points.
    pub fn is_exceptional(&self) -> bool {
        matches!(self, Error::Pole { .. } | Error::SingularMode { .. })
    }

    pub fn config(key: &str, msg: impl Into<String>) -> Self {
        Error::Config { key: key.to_string(), msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
