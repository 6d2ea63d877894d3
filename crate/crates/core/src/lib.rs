//! Exact arithmetic for genus bounds of space curves lying on surfaces of
//! small degree.
//!
//! Every formula is generic over an exact signed integer type ([`Scalar`]).
//! The aliases below fix it to [`Int`], an arbitrary-precision integer.

pub mod arith;
pub mod audit;
pub mod bounds;
pub mod error;
pub mod extremal;
pub mod hilbert;
pub mod scalar;
pub mod surface;
pub mod warning;

pub use error::{Constraint, Error, ProfileFault, Result};
pub use scalar::Scalar;
pub use warning::Warning;

pub type Int = num_bigint::BigInt;

pub type HalfInt = arith::HalfInt<Int>;
pub type ParamSet = bounds::ParamSet<Int>;
pub type BoundReport = bounds::BoundReport<Int>;
pub type HilbertFunction = hilbert::HilbertFunction<Int>;
pub type H1Profile = surface::H1Profile<Int>;
pub type SurfaceProfile = surface::SurfaceProfile<Int>;
pub type SurfaceGenus = surface::SurfaceGenus<Int>;
pub type RegularityBound = surface::RegularityBound<Int>;
pub type ConstructionData = extremal::ConstructionData<Int>;
pub type AssemblyReport = extremal::AssemblyReport<Int>;
