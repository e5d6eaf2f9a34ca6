use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
///
/// Variants fall into two families: input problems (malformed or
/// non-finite data, wrong shapes) and domain signals, which report that a
/// well-formed input has no answer of the requested kind.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("sandwich product leaves a non-vector residue of {residue:e}")]
    NotAVersorAction { residue: f64 },
    #[error("polynomial is not a spinor polynomial (residue {residue:e})")]
    NotSpinor { residue: f64 },
    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeadingCoefficient,
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("norm polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("element is not a null displacement")]
    NotNullDisplacement,
    #[error("annihilator kernel is empty")]
    EmptyKernel,
    #[error("annihilator kernel has dimension {0}")]
    KernelDimension(usize),
    #[error("probe vector was annihilated")]
    ProbeAnnihilated,
    #[error("sandwich map vanished for {probes} probes")]
    NowhereDefined { probes: usize },
    #[error("no case of the quaternion case analysis applied")]
    InternalCaseFailure,
    #[error("remainder and quadratic have no common zero")]
    NoCommonZero,
    #[error("every choice of annihilating points is orthogonal")]
    OrthogonalAnnihilators,
    #[error("evaluation at a root of the quadratic vanishes identically")]
    NullEvaluationDegenerate,
    #[error("the double-root criterion fails, no left factor exists")]
    NoFactor,
    #[error("double-root data are degenerate")]
    DegenerateData,
    #[error("quadratic roots are neither real nor a conjugate pair")]
    NonRealQuadratic,
    #[error("constructed factor fails verification (residual {residual:e})")]
    VerificationFailed { residual: f64 },
    #[error("factor has complex coefficients (imaginary residue {residue:e})")]
    ComplexFactor { residue: f64 },
    #[error("no cofactor found after {attempts} attempts")]
    ExhaustedAttempts { attempts: usize },
    #[error("homotopy path tracking failed")]
    PathFailure,
    #[error("expected {expected} intersection points, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("ruling pairs do not form a perfect matching")]
    InconsistentRulingGraph,
    #[error("axis has imaginary residue {residue:e}")]
    NonRealAxis { residue: f64 },
}

impl Error {
    /// Domain signals: the input was well formed but has no answer of the
    /// requested kind.
    pub fn is_domain_signal(&self) -> bool {
        !matches!(
            self,
            Error::NonFinite | Error::InvalidInput(_) | Error::ZeroElement
        )
    }
}
