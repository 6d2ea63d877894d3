//! The exact integer scalar every formula in this crate is generic over.
//!
//! Any signed integer type from the `num` family qualifies. The crate root
//! fixes [`crate::Int`] to [`num_bigint::BigInt`]; machine integers such as
//! `i64` and `i128` also satisfy the bound and are used by the tests as a fast
//! cross-check. Machine integers panic on overflow in every build profile of
//! this workspace, so no result ever wraps silently.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Send
    + Sync
    + 'static
{
    /// Lifts a small literal into the scalar type.
    fn lit(v: i64) -> Self {
        Self::from_i64(v).expect("literal does not fit the scalar type")
    }

    fn two() -> Self {
        Self::lit(2)
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Send
        + Sync
        + 'static
{
}

/// Converts a scalar used as an index (a twist or a sequence position) into
/// `usize`.
pub(crate) fn to_index<T: Scalar>(v: &T) -> Option<usize> {
    if v.is_negative() {
        None
    } else {
        v.to_usize()
    }
}

pub(crate) fn from_index<T: Scalar>(i: usize) -> T {
    T::from_usize(i).expect("index does not fit the scalar type")
}

/// Serde helpers that write scalars as decimal strings.
///
/// Output never goes through a native float or a fixed-width integer, so
/// arbitrarily large values survive serialization unchanged.
pub mod dec {
    use serde::ser::{SerializeSeq, Serializer};
    use std::fmt::Display;

    pub fn serialize<S: Serializer, T: Display>(v: &T, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(v)
    }

    pub mod seq {
        use super::*;

        pub fn serialize<S: Serializer, T: Display>(v: &[T], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer, T: Display>(
            v: &Option<T>,
            ser: S,
        ) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => ser.collect_str(x),
                None => ser.serialize_none(),
            }
        }
    }
}
