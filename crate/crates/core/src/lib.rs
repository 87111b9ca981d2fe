//! Harmonic maps of the unit disk into `R^n` driven by bounded-variation
//! boundary data.
//!
//! The crate builds harmonic extensions of circle data (step maps, finite
//! trigonometric series, or sums of both), exposes their first and second
//! derivatives, and computes the geometric quantities attached to the
//! resulting disk surfaces: first fundamental form, Gaussian curvature via
//! two independent formulas, level-curve lengths, areas, boundary length,
//! diameter-image lengths, and a graph-based geodesic diameter estimate.
//! On top of those sit checkers for the classical facts that hold for
//! harmonic surfaces: level-curve lengths increase to the boundary length,
//! Gaussian curvature is nonpositive, `4π·area ≤ length²`, a diameter image
//! is at most half the perimeter, and the sharpness of that constant along
//! the tilted-disk family.
//!
//! Module map:
//!
//! * [`boundary`] — step/trigonometric circle data, jump structure, total
//!   variation.
//! * [`poisson`] — Poisson kernel, harmonic extension and its derivatives,
//!   conjugate-kernel identities.
//! * [`surfaces`] — surface construction: boundary-driven, closed-form,
//!   minimal (power-series) and perturbation lifts; built-in examples.
//! * [`diffgeo`] — fundamental form, Jacobian, curvature and scans.
//! * [`functionals`] — lengths, areas, inequality reports, elliptic
//!   integrals, geodesic diameter.
//! * [`limits`] — boundary approach paths and cluster-limit probes.
//! * [`quadrature`] — the shared refinement-based integration engine.
//! * [`schema`] — JSON loading of boundary and surface specifications.

pub mod boundary;
pub mod diffgeo;
pub mod error;
pub mod functionals;
pub mod limits;
pub mod poisson;
pub mod quadrature;
pub mod schema;
pub mod surfaces;
pub mod vecn;

pub use boundary::{BoundaryMap, JumpPoint};
pub use error::{Error, Result};
pub use poisson::DiskPoint;
pub use quadrature::QuadratureConfig;
pub use surfaces::HarmonicSurface;
