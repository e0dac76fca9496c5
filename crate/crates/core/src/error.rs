use thiserror::Error;

/// Domain errors raised by the fingerprinting toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    Composite(u64),
    #[error("{a} has no inverse modulo {p}")]
    NoInverse { a: u64, p: u64 },
    #[error("element {value} is outside [0, {p})")]
    OutOfRange { value: u64, p: u64 },
    #[error("coefficient set must contain at least one coefficient")]
    EmptySet,
    #[error("cyclic set of size {d} would repeat the multiplicative group of order {order}")]
    CyclicTooLong { d: usize, order: u64 },
    #[error("AIKPS construction requires p >= 5 and eps > 0 (got p = {p}, eps = {eps})")]
    AikpsParameters { p: u64, eps: f64 },
    #[error("no prime lies in the AIKPS interval ({lo}, {hi})")]
    AikpsNoPrime { lo: f64, hi: f64 },
    #[error("AIKPS prime {r} is not invertible modulo {p}")]
    AikpsNotInvertible { r: u64, p: u64 },
    #[error("{m} generators exceed the enumeration bound of {max}")]
    TooManyGenerators { m: usize, max: usize },
    #[error("hypothesis unsatisfiable in Z_p: 3^{m} > {p}, so B cannot be proper")]
    GapUnsatisfiable { m: usize, p: u64 },
    #[error("no proper GAP found after {tries} tries")]
    NoProperGap { tries: u64 },
    #[error("operation requires a set with distinct elements; {value} repeats")]
    RepeatedElement { value: u64 },
    #[error("subset-sum metadata does not match the stored coefficients")]
    InconsistentGenerators,
    #[error("coefficient set has no generator list (needed for {0})")]
    MissingGenerators(&'static str),
    #[error("statevector needs {qubits} qubits, budget is {max}")]
    QubitBudget { qubits: usize, max: usize },
    #[error("gate references qubit {qubit} in a {num_qubits}-qubit circuit")]
    QubitIndex { qubit: usize, num_qubits: usize },
    #[error("gate control and target coincide on qubit {0}")]
    ControlIsTarget(usize),
    #[error("no cost model for circuit label {0:?}")]
    UnknownCircuitLabel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
