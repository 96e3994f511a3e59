//! Crate-wide error type.

use num_complex::Complex64;

/// Errors produced by geometry construction, meshing, material validation,
/// solvers and the experiment driver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("geometry: {0}")]
    Geometry(String),

    #[error("curve is not C^1: tangent jump of {angle_deg:.1} deg near s = {s:.4}")]
    CuspDetected { s: f64, angle_deg: f64 },

    #[error("curve self-intersects (segments {0} and {1})")]
    SelfIntersection(usize, usize),

    #[error("mesh: {0}")]
    Mesh(String),

    #[error("mesh target h = {h} too coarse: {reason}")]
    Refinement { h: f64, reason: String },

    #[error("material: {0}")]
    Material(String),

    #[error("wall compatibility system failed to close: {0}")]
    Compatibility(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("missing boundary trace data: {0}")]
    Interface(String),

    #[error("divergence lift incompatible: lambda = 0 with nonzero mean {mean:.3e} and homogeneous trace requested")]
    LiftIncompatible { mean: f64 },

    #[error("solver: {0}")]
    Solver(String),

    #[error("matrix numerically singular (min pivot ratio {pivot_ratio:.3e})")]
    Singular { pivot_ratio: f64 },

    #[error("lambda = {lambda} appears to be within {sigma_rel:.3e} of a pencil eigenvalue")]
    NearEigenvalue { lambda: Complex64, sigma_rel: f64 },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("config {file}:{line}: field `{field}`: {msg}")]
    Config {
        file: String,
        line: usize,
        field: String,
        msg: String,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
