//! Sparse/banded linear algebra kernels shared by the solvers.

pub mod band;
pub mod csr;
pub mod rcm;
pub mod sigma;

pub use band::{inf_norm, two_norm, BandLu};
pub use csr::CsrMatrix;
pub use sigma::{sigma_min, sigma_smallest_k, SigmaMinResult};
