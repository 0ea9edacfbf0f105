use alloc::string::String;

/// Clause of an exponent hypothesis that failed validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `q_j >= p_j` does not hold at `index` (0-based).
    OutputBelowInput { index: usize },
    /// Neither `1/r - |1/p| + |1/q| > 0` (hypothesis A) nor `= 0` (hypothesis B).
    InclusionBalance { value: f64 },
    /// Hypothesis B needs the strict `q_1 > p_1`.
    FirstNotStrict,
    /// `p_j` outside `(1, 2m]` at `index`.
    OutsideHlRange {
        index: usize,
        value: f64,
        upper: f64,
    },
    /// `|1/p| < 1` fails.
    HarmonicSumTooLarge { value: f64 },
    /// Scalar exponent outside `(m, 2m]`.
    OutsideCorollaryRange { p: f64, m: usize },
    /// Triviality probe requested for a class that is not trivial.
    NotTrivial,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::OutputBelowInput { index } => {
                write!(f, "q_{0} >= p_{0} fails", index + 1)
            }
            Violation::InclusionBalance { value } => write!(
                f,
                "1/r - |1/p| + |1/q| = {value} is neither positive (A) nor zero (B)"
            ),
            Violation::FirstNotStrict => f.write_str("hypothesis B requires q_1 > p_1 strictly"),
            Violation::OutsideHlRange {
                index,
                value,
                upper,
            } => write!(f, "p_{} = {value} is outside (1, {upper}]", index + 1),
            Violation::HarmonicSumTooLarge { value } => {
                write!(f, "|1/p| = {value} is not < 1")
            }
            Violation::OutsideCorollaryRange { p, m } => {
                write!(f, "p = {p} is outside ({m}, {}]", 2 * m)
            }
            Violation::NotTrivial => {
                f.write_str("class not trivial: no k with 1/q_k > sum_{j in I_k} 1/p_j")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("exponent {0} is not in [1, inf]")]
    InvalidExponent(f64),
    #[error("cannot parse exponent from {0:?}")]
    ParseExponent(String),
    #[error("exponent vector must be nonempty")]
    EmptyExponents,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(Violation),
    #[error("degenerate exponent at level {level}: 1/s_{level} <= 0")]
    DegenerateExponent { level: usize },
    #[error("invalid tensor: {0}")]
    InvalidTensor(String),
    #[error("dimension mismatch on axis {axis}: expected {expected}, found {found}")]
    DimensionMismatch {
        axis: usize,
        expected: usize,
        found: usize,
    },
    #[error("sign enumeration needs {bits} bits, budget is {budget}; use ascent instead")]
    BudgetExceeded { bits: usize, budget: usize },
    #[error("exact sign enumeration requires every domain exponent to be inf")]
    NotSupNorm,
    #[error("degenerate norm estimate: norm is 0 but lhs = {lhs}")]
    DegenerateNorm { lhs: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = core::result::Result<T, Error>;
