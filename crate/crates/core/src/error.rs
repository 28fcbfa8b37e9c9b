use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A request exceeds what the dense simulator or an enumerator will take on.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("qubit index {index} out of range for {num_qubits}-qubit register")]
    QubitIndex { index: usize, num_qubits: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("width mismatch: expected {expected} qubits, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown report format `{0}`")]
    UnknownFormat(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
