//! vesselmode: time-periodic Stokes flow in a straight cylindrical vessel
//! with rigid or elastic dimension-reduced walls.
//!
//! The crate solves the cross-section modal problems attached to a periodic
//! axial pressure gradient, assembles the quadratic operator pencils for the
//! rigid (no-slip) and elastic (wall-coupled) boundary conditions, scans
//! complex strips for pencil eigenvalues, and synthesizes the periodic flow
//! waveforms for both wall types. The headline experiment contrasts the two:
//! a rigid wall propagates every harmonic of the driving pressure, while the
//! elastic wall admits only the steady Poiseuille flow, which the crate
//! certifies through smallest-singular-value bounds on the pencil along the
//! imaginary axis.
//!
//! Module map:
//! - [`geometry`]: cross-section boundary curves, meshing, boundary quadrature
//! - [`wall_model`]: dimension-reduced elastic wall, strains, tractions, the
//!   explicit steady-state wall solver and its z-polynomial solution families
//! - [`modal_stokes`]: scalar cross-section solvers (Poiseuille, temporal
//!   modes), fluxes, divergence liftings, closed-form disk oracles
//! - [`elastic_coupling`]: coupled fluid/wall spaces and the quadratic pencils
//! - [`spectral_analysis`]: singular-value landscapes, eigenvalue location,
//!   strip certificates, resolvent scaling probes
//! - [`flowsynth`]: waveform decomposition, periodic synthesis, certificates,
//!   experiment driver and file formats

pub mod error;
pub mod linalg;

pub mod geometry;
pub mod wall_model;
pub mod modal_stokes;
pub mod elastic_coupling;
pub mod spectral_analysis;
pub mod flowsynth;

pub use error::{Error, Result};
