use thiserror::Error;

/// Errors raised by the library. Regularity failures are data, not errors, and are
/// reported through [`crate::recurrence::RegularityReport`] instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Parse(String),
    #[error("degenerate lattice")]
    DegenerateLattice,
    #[error("already centered")]
    AlreadyCentered,
    #[error("expected a centered pair")]
    NotCentered,
    #[error("unit-step form requires slope 1")]
    UnitStepSlope,
    #[error("non-invertible homothety")]
    NonInvertibleHomothety,
    #[error("degree bound violated: {0}")]
    DegreeBound(String),
    #[error("phi and psi are both identically zero")]
    BothZero,
    #[error("phi zero: outside classification scope")]
    PhiZero,
    #[error("psi degenerate: no regular functional")]
    PsiDegenerate,
    #[error("positivity requires real parameters")]
    NonRealParameters,
    #[error("insufficient moments: need {needed}, have {available}")]
    InsufficientMoments { needed: usize, available: usize },
    #[error("moment recursion stalls at n = {index}: d_n = 0")]
    MomentRecursionStalled { index: usize },
    #[error("anchoring degenerate")]
    AnchoringDegenerate,
    #[error("step degenerate at n = {0}")]
    StepDegenerate(usize),
    #[error("strings collide")]
    StringsCollide,
    #[error("moments undefined at truncation")]
    MomentsUndefined,
    #[error("residual check requires exact base points")]
    InexactBase,
    #[error("transform scale must be nonzero")]
    ZeroScale,
    #[error("{0}")]
    Invalid(String),
}
