//! Simple binary and ternary matroids embedded in projective geometries,
//! with tools for deciding membership in the class generated from the empty
//! matroid by direct sums and projective complements.

pub mod canonical;
pub mod census;
pub mod constructions;
pub mod decide;
pub mod error;
pub mod field;
pub mod manifest;
pub mod matroid;
pub mod pointset;
pub mod presentation;
pub mod space;

pub use decide::{Certificate, Method, Verdict};
pub use error::{Error, Result};
pub use field::{FieldOrder, GfVec};
pub use matroid::{EmbeddedMatroid, LinearMap, MatroidFlat};
pub use pointset::PointSet;
pub use presentation::{Embedded, MatrixPresentation};
pub use space::{Flat, PointSpace};
