//! Discrete-geometry laboratory for bending-energy experiments on closed
//! surfaces: Willmore energy, isoperimetric ratios, sphere inversions,
//! volume-preserving variations, and biharmonic-bridge connected sums.
//!
//! The crate is organised around a plain indexed triangle mesh
//! ([`mesh::TriangleMesh`]) plus analytic parametrisations
//! ([`analytic::ParametricSurface`]) for the generators that need exact
//! derivatives. Energies of smooth graph patches are evaluated by
//! high-order quadrature ([`quadrature`]), which is what makes the tiny
//! energy differences of the connected-sum construction observable at all.

pub mod analytic;
pub mod biharmonic;
pub mod gen;
pub mod glue;
pub mod io;
pub mod mesh;
pub mod mobius;
pub mod quadrature;
pub mod variation;
