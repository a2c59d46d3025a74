use thiserror::Error;

/// Errors produced anywhere in the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges or nodes")]
    EmptyGraph,

    #[error("invalid input: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("eigensolver failed to converge (matrix hash {hash:016x})")]
    NonConvergence { hash: u64 },

    #[error("eigenvectors were not computed for this spectrum")]
    MissingEigenvectors,

    #[error("no eigenvalues left after zero exclusion")]
    EmptySpectrum,

    #[error("fewer than two nonzero eigenvalues, no cycle structure to search")]
    NoCycle,

    #[error("no eigenvalue in the generator band for K_min = {k_min}")]
    DegenerateSpectrum { k_min: usize },

    #[error("every generating eigenvector component is numerically zero")]
    DegenerateEigenvector,

    #[error(
        "graph has {components} connected components after symmetrization; \
         restrict to the largest strongly connected component"
    )]
    Disconnected { components: usize },

    #[error("Fiedler vector has a single sign, no cut found")]
    NoCut,

    #[error("realization {index}: {source}")]
    Realization {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Error::Validation(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
