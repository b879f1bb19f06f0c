//! Knot Floer homology from grid diagrams.

pub mod alexander;
pub mod complex;
pub mod error;
pub mod grid;
pub mod homology;
pub mod invariants;
pub mod laurent;
pub mod moves;
pub mod planar;
pub mod surgery;

pub use error::{ComputeError, GridError, ModelError, ModelValidation};
pub use grid::{GridDiagram, Marking};
pub use laurent::LaurentPoly;
