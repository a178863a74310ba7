use alloc::string::String;

use num_complex::Complex64;

use crate::caratheodory::ExtremalKind;
use crate::mobius::MobiusType;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point not in G: s = {s}, p = {p}")]
    NotInDomain { s: Complex64, p: Complex64 },
    #[error("point not in the unit disk: {0}")]
    NotInDisk(Complex64),
    #[error("degenerate tangent")]
    DegenerateTangent,
    #[error("degenerate direction: the tangent vector is zero")]
    DegenerateDirection,
    #[error("automorphism is not hyperbolic: {0}")]
    NotHyperbolic(MobiusType),
    #[error("`{label}` takes value {value} with modulus >= 1")]
    NotSchur { label: String, value: Complex64 },
    #[error("trichotomy violated: {count} distinct maximizing angles")]
    TrichotomyViolated { count: usize },
    #[error("inconsistent classification: algebraic test says {algebraic}, extremal set is {kind}")]
    InconsistentClassification { algebraic: &'static str, kind: ExtremalKind },
    #[error("cannot align non-extremal function: pushforward length {pushed}, metric {metric}")]
    NotExtremal { pushed: f64, metric: f64 },
    #[error("alignment post-check failed: value {value}, derivative {derivative}")]
    AlignmentFailed { value: Complex64, derivative: Complex64 },
    #[error("tangent is not purely balanced (classified as {0})")]
    NotPurelyBalanced(&'static str),
    #[error("parameter r = {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("coefficients not identifiable at mu: |phi1 - phi2| = {0:e}")]
    NotIdentifiable(f64),
    #[error("near-singular resolvent (condition estimate {0:e})")]
    Singular(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("block matrix is not contractive: norm {0}")]
    NotContractive(f64),
    #[error("matrix is not unitary: defect {0:e}")]
    NotUnitary(f64),
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("root {0} outside the unit disk")]
    RootOutsideDisk(Complex64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

impl Error {
    /// Stable snake_case identifier for machine consumers.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotInDomain { .. } => "not_in_domain",
            Error::NotInDisk(_) => "not_in_disk",
            Error::DegenerateTangent => "degenerate_tangent",
            Error::DegenerateDirection => "degenerate_direction",
            Error::NotHyperbolic(_) => "not_hyperbolic",
            Error::NotSchur { .. } => "not_schur",
            Error::TrichotomyViolated { .. } => "trichotomy_violated",
            Error::InconsistentClassification { .. } => "inconsistent_classification",
            Error::NotExtremal { .. } => "not_extremal",
            Error::AlignmentFailed { .. } => "alignment_failed",
            Error::NotPurelyBalanced(_) => "not_purely_balanced",
            Error::ParameterOutOfRange(_) => "parameter_out_of_range",
            Error::NotIdentifiable(_) => "not_identifiable",
            Error::Singular(_) => "singular",
            Error::Dimension(_) => "dimension",
            Error::NotContractive(_) => "not_contractive",
            Error::NotUnitary(_) => "not_unitary",
            Error::DuplicatePoint(_) => "duplicate_point",
            Error::RootOutsideDisk(_) => "root_outside_disk",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
