use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("membership check failed for {tag}: residual {residual:.3e}")]
    Membership { tag: String, residual: f64 },
    #[error("singular input: {0}")]
    Singular(String),
    #[error("rank decision is marginal ({0})")]
    MarginalStratum(String),
    #[error("matrix is off the top stratum (Bruhat cell {cell})")]
    OffTopStratum { cell: String },
    #[error("unknown tag '{0}'")]
    UnknownTag(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("right-hand side is not in the image (residual {0:.3e})")]
    NotInImage(f64),
    #[error("argument outside the domain (residual {0:.3e})")]
    NotInDomain(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
