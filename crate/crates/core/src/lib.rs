//! Octahedron covers of bivariate fractal interpolation surfaces.
//!
//! A rectangular data grid with vertical scaling factors defines an iterated
//! function system of affine-bilinear maps whose attractor is the graph of a
//! continuous interpolating surface. This crate builds that system, composes
//! it to any order, and computes a finite family of balls of a scaled
//! taxicab metric (octahedrons) that provably contains the surface. The
//! attractor module samples the surface so the guarantee can be checked.

pub mod attractor;
pub mod bench;
pub mod composition;
pub mod cover;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod ifs;
pub mod io;

pub use error::{Error, Result};
pub use geometry::{Point3, ScaledTaxicabMetric};
pub use grid::{DataGrid, GridData};
pub use ifs::{IfsMap, IfsSystem, MapCoefficients};
