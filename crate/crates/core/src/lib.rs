//! Exact graded linear algebra and DG-Lie algebra toolkit over the rationals.

pub mod bilinear;
pub mod bv;
pub mod cartan;
pub mod coder;
pub mod cohomology;
pub mod derived;
pub mod dgla;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod homotopy;
pub mod linalg;
pub mod mc;
pub mod par;

pub use error::{Error, Result};
pub use graded::{BasisRef, Element, GradedMap, GradedSpace, Subspace};
pub use linalg::{Matrix, Scalar};
pub use par::Exec;
