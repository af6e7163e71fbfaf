use thiserror::Error;

pub type Result<T> = core::result::Result<T, QsdError>;

/// Every failure the library can report.
///
/// `code()` gives a stable module-qualified identifier for machine-readable
/// error records.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsdError {
    #[error("gamma function pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("denominator parameter is a nonpositive integer ({value})")]
    DenominatorPole { value: f64 },
    #[error("parameter pole: {0}")]
    ParameterPole(&'static str),
    #[error("series did not converge after {terms} terms ({what})")]
    NonConvergence { what: &'static str, terms: usize },
    #[error("argument outside the evaluation domain: {0}")]
    EvaluationDomain(&'static str),
    #[error("integral diverges: {0}")]
    Divergence(&'static str),
    #[error("imaginary residue {imag} exceeds the hard limit for a real result {real}")]
    ImaginaryResidue { real: f64, imag: f64 },
    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error(
        "quadrature did not reach tolerance: estimate {abs_err} after {evaluations} evaluations"
    )]
    QuadratureBudget { abs_err: f64, evaluations: usize },
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("no sign change of the eigenvalue equation in [{lo}, {hi}] for A = {a}")]
    BracketFailure { a: f64, lo: f64, hi: f64 },
    #[error("invalid simulation config: {0}")]
    Config(&'static str),
    #[error("no path survived to the horizon")]
    AllAbsorbed,
    #[error("level mismatch: empirical A = {empirical}, analytic A = {analytic}")]
    MismatchedA { empirical: f64, analytic: f64 },
}

impl QsdError {
    pub fn code(&self) -> &'static str {
        match self {
            QsdError::Pole { .. } => "specfun.pole",
            QsdError::DenominatorPole { .. } => "specfun.denominator_pole",
            QsdError::ParameterPole(_) => "specfun.parameter_pole",
            QsdError::NonConvergence { .. } => "specfun.non_convergence",
            QsdError::EvaluationDomain(_) => "specfun.evaluation_domain",
            QsdError::Divergence(_) => "specfun.divergence",
            QsdError::ImaginaryResidue { .. } => "specfun.imaginary_residue",
            QsdError::InvalidBracket { .. } => "numerics.invalid_bracket",
            QsdError::QuadratureBudget { .. } => "numerics.non_convergence",
            QsdError::Domain(_) => "eigen.domain",
            QsdError::BracketFailure { .. } => "eigen.bracket_failure",
            QsdError::Config(_) => "simulate.config",
            QsdError::AllAbsorbed => "simulate.all_absorbed",
            QsdError::MismatchedA { .. } => "simulate.mismatched_a",
        }
    }
}
