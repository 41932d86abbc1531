use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {ambient} variables")]
    IndexOutOfRange { index: usize, ambient: usize },
    #[error("denominator is identically zero")]
    IdenticallyZeroDenominator,
    #[error("denominator vanishes at the given point")]
    DenominatorVanishes,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`t` is not available over the base field Q")]
    TInQField,
    #[error("expression is not a polynomial: {0}")]
    NotAPolynomial(String),
    #[error("degree cap {cap} exceeded (reached degree {degree})")]
    DegreeCapExceeded { cap: u32, degree: u32 },
    #[error("point does not lie on variety `{0}`")]
    PointNotOnVariety(String),
    #[error("the prolongation fiber is empty at this point")]
    NoSolution,
    #[error("fiber equations do not determine v from u at this point")]
    TransferNotFunctional,
    #[error("cocycle violation in prolonged atlas: {0}")]
    CocycleViolation(String),
    #[error("chartwise map representatives disagree: {0}")]
    ChartIncompatibility(String),
    #[error("group axioms fail for `{0}`")]
    GroupAxiomsFailed(String),
    #[error("cleared denominator vanishes identically on the variety")]
    IndeterminateOnVariety,
    #[error("series has a non-unit constant term")]
    NonUnitConstantTerm,
    #[error("a denominator of the section vanishes at the initial point")]
    DenominatorVanishesAtInitialPoint,
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("coefficient {0} has a pole at t = 0")]
    PoleAtOrigin(String),
    #[error("model error: {0}")]
    Model(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
