use thiserror::Error;

/// Errors produced by graph construction, parsing, and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("format error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Format { line: Option<usize>, message: String },

    #[error("unsupported: {0}")]
    Capability(String),

    #[error("graph is disconnected; components: {components:?}")]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("operation requires at least {required} vertices, graph has {n}")]
    TooFewVertices { required: usize, n: usize },

    #[error("enumeration of n = {n} exceeds the cap of {cap}; stream graph6 input instead")]
    EnumerationCap { n: usize, cap: usize },

    #[error("no connected sample after {attempts} attempts")]
    SamplingExhausted { attempts: u64 },

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("shift {shift} does not exceed the spectral radius {radius} of the deleted subgraph")]
    IllConditioned { shift: f64, radius: f64 },
}

impl Error {
    pub(crate) fn format(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
