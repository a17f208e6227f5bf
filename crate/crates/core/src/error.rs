use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division is only allowed inside rational literals")]
    DivisionByNonConstant,
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable spaces differ: {0} vs {1}")]
    SpaceMismatch(String, String),
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("Weierstrass equation is singular: the discriminant vanishes identically")]
    SingularCurve,
    #[error("factor list rejected, residual quotient {residual}")]
    FactorListRejected { residual: String },
    #[error("invalid factor {0}")]
    InvalidFactor(String),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("doubling formulas disagree after normalization")]
    DoublingMismatch,
    #[error("degree ceiling exceeded at level {level}: degree {degree} > {ceiling}")]
    DegreeExplosion { level: u32, degree: u32, ceiling: u32 },
    #[error("factor list does not cover {0}")]
    UncoveredSupport(String),
    #[error("hypersurface is the hyperplane at infinity: curve coefficients have a pole along it")]
    PoleAtGamma,
    #[error("reduction is singular: the discriminant vanishes identically on the hypersurface")]
    SingularReduction,
    #[error("quadratic form is singular")]
    SingularConic,
    #[error("no rational point on the conic within search bound {0}")]
    NoRationalPoint(i64),
    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),
    #[error("point lies on the hyperplane at infinity")]
    AtInfinity,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no nonsingular multiple up to {cap} for divisor {divisor}")]
    MultipleCapExceeded { divisor: String, cap: u32 },
    #[error("estimate did not converge within {levels} levels")]
    NoConvergence { levels: u32 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
