use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A hypothesis inequality on `(r, d, s, pi, p)`.
///
/// `Display` renders the *violated* form, e.g. `s > 2r-4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// `r >= 3`, needed for the definitions themselves.
    AmbientDefined,
    /// `r >= 4`.
    AmbientMin,
    /// `s >= r-1`.
    SurfaceDegreeMin,
    /// `s <= 2r-4`.
    SurfaceDegreeMax,
    /// `d >= 1`.
    CurveDegreeMin,
    /// `d > d0(r)`.
    CurveDegreeThreshold,
    /// `pi >= 0`.
    SectionalGenusMin,
    /// `pi <= pi0`.
    SectionalGenusMax,
    /// `p >= -binom(pi0-pi+1, 2)`.
    SurfaceGenusMin,
    /// `p <= 0`.
    SurfaceGenusMax,
}

impl Constraint {
    pub fn violated(&self) -> &'static str {
        match self {
            Constraint::AmbientDefined => "r < 3",
            Constraint::AmbientMin => "r < 4",
            Constraint::SurfaceDegreeMin => "s < r-1",
            Constraint::SurfaceDegreeMax => "s > 2r-4",
            Constraint::CurveDegreeMin => "d < 1",
            Constraint::CurveDegreeThreshold => "d <= d0(r)",
            Constraint::SectionalGenusMin => "pi < 0",
            Constraint::SectionalGenusMax => "pi > pi0",
            Constraint::SurfaceGenusMin => "p < -binom(pi0-pi+1,2)",
            Constraint::SurfaceGenusMax => "p > 0",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.violated())
    }
}

/// Why an H¹ profile was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileFault {
    /// `h1(1)` must equal `pi0 - pi`.
    Anchor {
        expected: String,
        found: String,
    },
    /// `h1(i) <= max(0, h1(i-1) - 1)`.
    Decay {
        bound: String,
        found: String,
    },
    Negative {
        found: String,
    },
}

impl fmt::Display for ProfileFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileFault::Anchor { expected, found } => {
                write!(f, "anchor h1(1) = {found}, expected pi0-pi = {expected}")
            }
            ProfileFault::Decay { bound, found } => {
                write!(f, "decay violated: {found} > max(0, h1(i-1)-1) = {bound}")
            }
            ProfileFault::Negative { found } => write!(f, "negative value {found}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binom({n}, k) is undefined for n < 0")]
    NegativeBinomialTop { n: String },
    #[error("binom(n, {k}) is undefined for k < 0")]
    NegativeBinomialBottom { k: String },
    #[error("divisor {b} must be positive")]
    NonPositiveDivisor { b: String },
    #[error("d-1 = m*s + eps needs d >= 1 and s >= 1 (got d = {d}, s = {s})")]
    DivisionDomain { d: String, s: String },
    #[error("{constraint} ({detail})")]
    Param {
        constraint: Constraint,
        detail: String,
    },
    #[error("invalid h1 profile at i = {index}: {fault}")]
    InvalidProfile { index: usize, fault: ProfileFault },
    #[error("mu({index}) is negative")]
    NegativeMu { index: usize },
    #[error("tail entry {index} is negative (Delta h_C(i) <= d always)")]
    NegativeTail { index: usize },
    #[error(
        "hyperplane point section needs r-1 <= s <= 2r-4 unless h_H is given (s = {s}, r = {r})"
    )]
    SectionOutsideRange { s: String, r: String },
    #[error("surface genus {value} outside [{lo}, {hi}]")]
    SurfaceGenusRange {
        value: String,
        lo: String,
        hi: String,
    },
    #[error("Hilbert function tail {tail} never reaches its degree {degree}")]
    NotStabilizing { degree: String, tail: String },
    #[error("k = {k} is not congruent to d = {d} mod s = {s}")]
    IncongruentConeDegree { k: String, d: String, s: String },
    #[error("s = {s} does not divide k+s-1-eps = {numerator}")]
    ConeNotDivisible { numerator: String, s: String },
    #[error("cone parameter needs s >= 2 and 0 <= eps <= s-1 (s = {s}, eps = {epsilon})")]
    ConeDomain { s: String, epsilon: String },
    #[error("cone degree k = {k} outside [s+1, d) = [{lo}, {d})")]
    ConeDegreeRange { k: String, lo: String, d: String },
    #[error("{what} must be at least {min} (got {got})")]
    TooSmall {
        what: &'static str,
        min: String,
        got: String,
    },
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("malformed grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(constraint: Constraint, detail: impl Into<String>) -> Self {
        Error::Param {
            constraint,
            detail: detail.into(),
        }
    }

    pub(crate) fn too_small(what: &'static str, min: impl ToString, got: impl ToString) -> Self {
        Error::TooSmall {
            what,
            min: min.to_string(),
            got: got.to_string(),
        }
    }
}
