//! Exact arithmetic: rationals, dense rational matrices, sparse
//! multivariate polynomials and lattice polygons.

mod matrix;
mod mpoly;
mod polygon;
mod rat;

pub use matrix::QMatrix;
pub use mpoly::{det_division_free, MPoly, Monomial};
pub use polygon::{newton_polygon, LatticePolygon};
pub use rat::{lcm_denominators, ParseRatError, Rat};
