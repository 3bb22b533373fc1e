//! Exact computation of basic, twisted basic and Lichnerowicz cohomology,
//! the Álvarez class, transversal Hodge stars and the basic signature of
//! Riemannian foliations given as finite foliated algebraic models.
//!
//! Everything is computed over the rationals (or the Gaussian rationals where
//! the signature involution needs powers of `i`); no floating point is used.

pub mod error;
pub mod exterior;
pub mod format;
pub mod lichnerowicz;
pub mod linalg;
pub mod model;
pub mod morphism;
pub mod scalar;
pub mod signature;
pub mod zoo;

pub use error::{Error, ErrorKind, Result};
pub use exterior::{FramedMetric, MultiIndexForm};
pub use lichnerowicz::{CohomologyReport, Sign, TwistingForm};
pub use linalg::{Matrix, SymmetricForm};
pub use model::{BasicComplex, FoliatedModel, MeanCurvatureData};
pub use morphism::{EquivalenceCertificate, FoliatedModelMap};
pub use scalar::{GaussianRational, Rational, Scalar};
pub use signature::{SignatureReport, StarInvolution};
pub use zoo::ZooEntry;
