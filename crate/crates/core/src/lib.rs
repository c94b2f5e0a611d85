//! Exact homological algebra for small cell complexes and for quiver
//! representations of one-object dg categories.
//!
//! * [`linalg`]: exact rationals, rank, kernels.
//! * [`graded`]: graded vector spaces and graded maps.
//! * [`complexes`]: cochain complexes, cohomology, Euler characteristic.
//! * [`cellular`]: cellular chain complexes and surface classification.
//! * [`quiver`]: representations and their morphism complexes.
//! * [`classification`]: seeded and exhaustive sweeps checking the
//!   classification of exact Lagrangian surfaces in `T*S²` and `T*T²`.
//!
//! All coefficients are exact rationals; no floating point is used.

pub mod cellular;
pub mod classification;
pub mod complexes;
pub mod graded;
pub mod linalg;
pub mod par;
pub mod quiver;

pub use cellular::{Builtin, CellComplex, SurfaceVerdict};
pub use classification::{SampleConfig, Theorem, TheoremReport};
pub use complexes::{CochainComplex, CohomologyResult};
pub use graded::{GradedMap, GradedVectorSpace};
pub use linalg::{Rational, RationalMatrix};
pub use par::Execution;
pub use quiver::{QuiverPresentation, Representation};
