//! Solver library for distributed-parameter topology optimization of a
//! diffusion (Poisson) equation with an objective that depends on the mean
//! curvature of the state's iso-contours.
//!
//! The pipeline: a cell-centered finite-volume discretization of
//! `div(k(w) grad u) = g` with SIMP material interpolation, a regularized
//! curvature functional, narrow-band mollified surface terms for the adjoint
//! right-hand side, multigrid-preconditioned CG linear solves, and a
//! nonmonotone spectral projected gradient outer loop over the admissible
//! design set.

pub mod app;
pub mod error;
pub mod fields;
pub mod functional;
pub mod grid;
pub mod mgsolve;
pub mod narrowband;
pub mod optimizer;
pub mod pde;
pub mod problem;

pub use error::{Error, Result};
