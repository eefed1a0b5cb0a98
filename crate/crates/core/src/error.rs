use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not traceless: |Tr m| = {residual:.3e}")]
    NotTraceless { residual: f64 },

    #[error("matrix is not in SU(3): unitarity residual {unitarity:.3e}, determinant residual {determinant:.3e}")]
    NotSpecialUnitary { unitarity: f64, determinant: f64 },

    #[error("chart is degenerate at this point: {factor} vanishes ({value:.3e})")]
    DegenerateStratum { factor: &'static str, value: f64 },

    #[error("loop is not closed: endpoint state mismatch {mismatch:.3e}")]
    OpenLoop { mismatch: f64 },

    #[error("invalid loop: {0}")]
    InvalidLoop(String),

    #[error("consecutive states are nearly orthogonal at sample {index} (|overlap| = {overlap:.3e}); refine the sampling")]
    VanishingOverlap { index: usize, overlap: f64 },

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
