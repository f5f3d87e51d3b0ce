use thiserror::Error;

/// Errors surfaced by graph construction, the dense kernels, and the
/// distance formulas.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph needs at least 2 vertices, got {0}")]
    InvalidVertexCount(usize),

    #[error("invalid edge ({u}, {v}, {w}): {reason}")]
    InvalidEdge { u: usize, v: usize, w: f64, reason: String },

    #[error("graph is not connected (vertex {0} unreachable from vertex 0)")]
    NotConnected(usize),

    #[error("vertices must be distinct: {0:?}")]
    SameVertex((usize, usize, usize)),

    #[error("vertex index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("Perron data does not match this graph: ‖𝓛p‖∞ = {residual:.3e} exceeds {tolerance:.3e}")]
    PerronMismatch { residual: f64, tolerance: f64 },

    #[error("power iteration did not converge within {iterations} iterations (last change {last_change:.3e})")]
    NoConvergence { iterations: usize, last_change: f64 },

    #[error("converged eigenvector has a non-positive component at index {0}")]
    NonPositiveEigenvector(usize),

    #[error("matrix is singular to working precision")]
    SingularMatrix,

    #[error("kernel-shifted matrix is singular; kernel dimension is likely > 1")]
    SingularShift,

    #[error("parameter t = {t} out of range: the walk distance requires 0 < t < 1/rho = {bound}")]
    ParameterOutOfRange { t: f64, bound: f64 },

    #[error("walk matrix has a non-positive entry {value:.3e} at ({i}, {j})")]
    NonPositiveWalkMatrix { i: usize, j: usize, value: f64 },

    #[error("{context}: |d({i},{j}) - d({j},{i})| = {gap:.3e} exceeds symmetry tolerance {tolerance:.3e}")]
    NumericalInconsistency { context: String, i: usize, j: usize, gap: f64, tolerance: f64 },

    #[error("matrix is not a g-inverse: relative residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotAGInverse { residual: f64, tolerance: f64 },

    #[error("submatrix 𝓛 with row {v} and column {u} removed is singular")]
    SingularSubmatrix { u: usize, v: usize },

    #[error("matrix is not a Laplacian: row {row} sums to {sum:.3e}")]
    NotALaplacian { row: usize, sum: f64 },

    #[error("Laplacian minor vanished; the graph behind it looks disconnected")]
    DisconnectedKernel,

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether this error reflects bad input (a file, a flag, a label)
    /// rather than a numerical failure. The CLI maps input errors to
    /// exit code 2 and numerical errors to exit code 3.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidVertexCount(_)
                | Error::InvalidEdge { .. }
                | Error::NotConnected(_)
                | Error::SameVertex(_)
                | Error::IndexOutOfRange { .. }
                | Error::Parse { .. }
                | Error::UnknownLabel(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
