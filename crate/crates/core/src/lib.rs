//! Matroid lifts and the certificates built on them.
//!
//! * [`matroid`]: circuit-based matroids, rank/closure oracles, minors, duality, isomorphism.
//! * [`lifts`]: elementary lifts from linear classes and the lift `M^N` from a matroid on circuits.
//! * [`gf`]: prime-field linear algebra and the representable lift witness.
//! * [`krt`]: the sparse paving family `K(r,t)`, its obstruction facts, Ingleton and Vamos-like checks.
//! * [`gain`]: finite groups, group partitions, full gain graphs and their lifts.
//! * [`format`]: text formats for matroids, lift specs, matrices and groups.

pub mod bits;
pub mod error;
pub mod format;
pub mod gain;
pub mod gf;
pub mod krt;
pub mod lifts;
pub mod matroid;

pub use bits::{GroundSet, SubsetMask};
pub use error::{Error, Result};
pub use matroid::Matroid;
