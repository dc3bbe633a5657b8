//! Error correction over real, complex and quaternionic qubit spaces.
//!
//! The crate is organized bottom-up:
//!
//! - [`quaternion`]: Hamilton quaternions, the quaternionic picture of a
//!   qubit, and the Hopf projection.
//! - [`linalg`]: dense tensor-product states and operators over the three
//!   scalar fields, with Gram–Schmidt completion.
//! - [`codes`]: repetition and concatenated codes, error models, the
//!   Knill–Laflamme checker and ancilla-based correction synthesis.
//! - [`dirac`]: gamma matrices, the Majorana basis change and the real
//!   error generators acting on spinors.

pub mod codes;
pub mod dirac;
pub mod linalg;
pub mod quaternion;
pub mod rng;
pub mod tolerance;

pub use linalg::{LinearMap, ScalarField, SiteOperator, StateVector};
pub use quaternion::{ComplexPair, ImaginaryVector, Quaternion, UnitQuaternion};
