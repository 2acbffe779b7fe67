use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges after removing self-loops")]
    EmptyGraph,

    #[error("graph has no wedges")]
    NoWedges,

    #[error("sampling probability must lie in (0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("wedge sample count must be at least 1")]
    InvalidWedgeCount,

    #[error("{0}")]
    InvalidPlan(&'static str),

    #[error("relative standard error is undefined for a triangle-free graph")]
    UndefinedRse,

    #[error("clustering coefficient is zero; wedge sampling cannot observe a closed wedge")]
    DegenerateClustering,

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
