//! Exact-arithmetic workbench for the type-A graded Hecke algebra: segment
//! combinatorics and the Grothendieck ring, principal-series K-group
//! bookkeeping with translation functors, explicit finite-dimensional
//! modules with Jacquet-type functors and Hermitian duals, and randomized
//! verification suites tying the two sides together.

pub mod error;
pub mod functor;
pub mod hmodule;
pub mod kring;
pub mod matrix;
pub mod perm;
pub mod scalar;
pub mod segment;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use hmodule::HModule;
pub use kring::KElement;
pub use scalar::Scalar;
pub use segment::{Multisegment, Segment};
pub use weight::{KHCElement, PsSymbol, Weight};
