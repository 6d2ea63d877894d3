use serde::Serialize;

use crate::error::Constraint;

/// A structured, non-fatal diagnostic attached to a computed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// `d <= d0(r)`: the formula is defined but not known to be sharp.
    BelowDegreeThreshold { d: String, d0: String },
    /// A hypothesis failed and was accepted because the caller asked for
    /// relaxed validation.
    RelaxedConstraint {
        constraint: Constraint,
        violated: String,
    },
    /// A surface genus outside `[-binom(pi0-pi+1, 2), 0]`.
    InadmissibleSurfaceGenus {
        value: String,
        lo: String,
        hi: String,
    },
    /// A user-supplied Hilbert function that is not nondecreasing.
    NotMonotone { index: usize },
}

impl Warning {
    pub(crate) fn relaxed(constraint: Constraint) -> Self {
        Warning::RelaxedConstraint {
            constraint,
            violated: constraint.violated().to_string(),
        }
    }
}
