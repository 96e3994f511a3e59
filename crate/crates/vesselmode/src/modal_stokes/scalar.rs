//! Cross-section scalar solves: the Poiseuille profile nu*Lap(v) = 1 and the
//! temporal modes i*omega*v - nu*Lap(v) + 1 = 0, both with homogeneous
//! Dirichlet data.

use num_complex::Complex64;

use super::fem::P2Space;
use crate::error::{Error, Result};
use crate::linalg::{BandLu, CsrMatrix};

/// Fluid parameters; mu_dyn = nu * rho_b.
#[derive(Debug, Clone, Copy)]
pub struct FluidParams {
    pub nu: f64,
    pub rho_b: f64,
}

impl FluidParams {
    pub fn new(nu: f64, rho_b: f64) -> Result<Self> {
        if nu <= 0.0 || rho_b <= 0.0 {
            return Err(Error::Material(format!(
                "fluid parameters must be positive: nu = {nu}, rho_b = {rho_b}"
            )));
        }
        Ok(FluidParams { nu, rho_b })
    }

    pub fn mu_dyn(&self) -> f64 {
        self.nu * self.rho_b
    }
}

/// Complex nodal field over a P2 space (zero on Dirichlet-tagged nodes when
/// produced by the homogeneous solvers).
#[derive(Debug, Clone)]
pub struct ComplexScalarField {
    pub values: Vec<Complex64>,
}

/// Temporal-mode solution on the cross-section.
#[derive(Debug, Clone)]
pub struct ModalRigidSolution {
    pub omega: f64,
    pub field: ComplexScalarField,
    pub flux: Complex64,
    pub refinement_steps: usize,
    pub residual: f64,
}

/// Interior-eliminated operator nu*K + i*omega*M with unit load.
fn solve_dirichlet_scalar(
    space: &P2Space,
    nu: f64,
    omega: f64,
) -> Result<(ComplexScalarField, usize, f64)> {
    let sm = space.scalar_matrices();
    let n_int = space.n_interior;
    let mut triplets = Vec::with_capacity(sm.stiffness.len());
    let add = |triplets: &mut Vec<(usize, usize, Complex64)>,
               list: &[(usize, usize, Complex64)],
               c: Complex64| {
        for &(r, col, v) in list {
            if let (Some(ri), Some(ci)) = (space.interior_index[r], space.interior_index[col]) {
                triplets.push((ri, ci, c * v));
            }
        }
    };
    add(&mut triplets, &sm.stiffness, Complex64::new(nu, 0.0));
    if omega != 0.0 {
        add(&mut triplets, &sm.mass, Complex64::new(0.0, omega));
    }
    let a = CsrMatrix::from_triplets(n_int, &triplets);
    // weak form of (i w v - nu Lap v + 1 = 0): (i w v, phi) + nu (grad v, grad phi) = -(1, phi)
    let mut rhs = vec![Complex64::new(0.0, 0.0); n_int];
    for (i, &l) in sm.unit_load.iter().enumerate() {
        if let Some(ii) = space.interior_index[i] {
            rhs[ii] = -l;
        }
    }
    let f = BandLu::factor(&a, None)?;
    if f.pivot_ratio() < 1e-14 {
        return Err(Error::Singular {
            pivot_ratio: f.pivot_ratio(),
        });
    }
    let (x, rep) = f.solve(&rhs);
    let mut values = vec![Complex64::new(0.0, 0.0); space.n_nodes()];
    for (i, idx) in space.interior_index.iter().enumerate() {
        if let Some(ii) = idx {
            values[i] = x[*ii];
        }
    }
    Ok((
        ComplexScalarField { values },
        rep.refinement_steps,
        rep.residual_inf,
    ))
}

/// Poiseuille profile: nu * Lap(v*) = 1 in Omega, v* = 0 on gamma.
/// The solution is real and strictly negative inside.
pub fn solve_poiseuille(space: &P2Space, nu: f64) -> Result<ComplexScalarField> {
    let (field, _, _) = solve_dirichlet_scalar(space, nu, 0.0)?;
    Ok(field)
}

/// Temporal mode: i*omega*v - nu*Lap(v) + 1 = 0, v = 0 on gamma, omega != 0.
pub fn solve_womersley_mode(space: &P2Space, nu: f64, omega: f64) -> Result<ModalRigidSolution> {
    if omega == 0.0 {
        return Err(Error::UnsupportedParameter(
            "omega = 0 is the steady problem; call solve_poiseuille".into(),
        ));
    }
    let (field, steps, residual) = solve_dirichlet_scalar(space, nu, omega)?;
    let flux = flux_of(space, &field);
    Ok(ModalRigidSolution {
        omega,
        field,
        flux,
        refinement_steps: steps,
        residual,
    })
}

/// Integral of the field over the cross-section.
pub fn flux_of(space: &P2Space, field: &ComplexScalarField) -> Complex64 {
    let sm = space.scalar_matrices();
    sm.unit_load
        .iter()
        .zip(&field.values)
        .map(|(l, v)| l * v)
        .sum()
}

/// Relative residual of the flux identity
/// Int v = i w Int |v|^2 - nu Int |grad v|^2, an exact Galerkin identity.
/// Returns (residual, normalized) where `normalized` is false when the flux
/// itself vanished and the absolute residual is reported instead.
pub fn flux_identity_residual(
    space: &P2Space,
    sol: &ModalRigidSolution,
    nu: f64,
) -> (f64, bool) {
    let flux = flux_of(space, &sol.field);
    let l2 = space.l2_norm(&sol.field.values);
    let h1 = space.h1_seminorm(&sol.field.values);
    let rhs = Complex64::new(0.0, sol.omega) * l2 * l2 - Complex64::new(nu, 0.0) * h1 * h1;
    let diff = (flux - rhs).norm();
    if flux.norm() > 1e-300 {
        (diff / flux.norm(), true)
    } else {
        (diff, false)
    }
}
