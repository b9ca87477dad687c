use thiserror::Error;

/// Errors raised by the exact chain-complex engine.
#[derive(Debug, Error, PartialEq)]
pub enum ChainError {
    /// `boundary[q] * boundary[q+1] != 0`; reports the lowest offending `q`.
    #[error("chain condition violated: boundary_{q} . boundary_{} != 0", q + 1)]
    ChainCondition { q: usize },
    #[error("boundary matrix at degree {q} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        q: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("homology data at degree {q}: column {col} is not a cycle")]
    NotACycle { q: usize, col: usize },
    #[error("homology data at degree {q}: cycles are dependent modulo boundaries")]
    DependentHomology { q: usize },
    #[error("homology rank at degree {q} is {given}, complex has betti number {actual}")]
    HomologyRankMismatch { q: usize, given: usize, actual: usize },
    #[error("degree {q}: the combined set (d(b), z, b) is not a basis of C_{q}")]
    InconsistentBases { q: usize },
    #[error("degree {q}: supplied b-set has dependent boundary images")]
    DegenerateBSet { q: usize },
    #[error("chain map does not commute with the boundary at degree {q}")]
    NotAChainMap { q: usize },
    #[error("sequence is not exact at degree {q}: {reason}")]
    NotExact { q: usize, reason: &'static str },
    #[error("long exact sequence complex is not acyclic at slot {slot}")]
    SequenceNotAcyclic { slot: usize },
}

/// Errors raised by the closed-form frustum formulas.
#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("radii must satisfy 0 < l1 < l2, got l1={l1}, l2={l2}")]
    BadRadii { l1: f64, l2: f64 },
    #[error("betti vector has length {given}, expected m+1 = {expected}")]
    BettiLength { given: usize, expected: usize },
    #[error("section dimension must be odd for this formula, got m={m}")]
    EvenSection { m: usize },
    #[error("betti vector is not Poincare symmetric (r_{q} != r_{})", m - q)]
    NotPoincareSymmetric { q: usize, m: usize },
    #[error("eigenvalue must be non-negative, got {lambda}")]
    NegativeEigenvalue { lambda: f64 },
    #[error("degree q={q} out of range 0..={m}")]
    DegreeOutOfRange { q: usize, m: usize },
    #[error("cone angle must lie in (0, pi/2), got {alpha}")]
    BadAngle { alpha: f64 },
    #[error("representation rank must be positive")]
    ZeroRank,
}

/// Errors raised by the spectral machinery.
#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("special function evaluation out of range: {what} at argument {arg}")]
    Range { what: &'static str, arg: f64 },
    #[error("failed to bracket zero #{index} within scan horizon {horizon}")]
    BracketingFailed { index: usize, horizon: f64 },
    #[error("zero table must request at least one zero")]
    EmptyRequest,
    #[error("tolerance must be positive, got {tol}")]
    BadTolerance { tol: f64 },
    #[error("continuation oracle did not converge: tail estimate {tail:e} exceeds budget {budget:e}")]
    OracleDiverged { tail: f64, budget: f64 },
    #[error("spectral parameter must be negative real, got {lambda}")]
    LambdaOnCut { lambda: f64 },
    #[error(transparent)]
    Param(#[from] ParamError),
}
