//! Quadrature on the closed boundary curve.

use super::curve::BoundaryCurve;
use crate::error::{Error, Result};

/// Periodic trapezoid rule on gamma: uniform nodes, equal weights. Exact for
/// trigonometric polynomials up to the declared order.
#[derive(Debug, Clone)]
pub struct BoundaryQuadrature {
    pub s: Vec<f64>,
    pub w: Vec<f64>,
    /// highest trigonometric degree integrated exactly
    pub order: usize,
}

pub fn boundary_quadrature(curve: &BoundaryCurve, n: usize) -> Result<BoundaryQuadrature> {
    if n < 4 {
        return Err(Error::InsufficientData(format!(
            "boundary quadrature needs >= 4 nodes, got {n}"
        )));
    }
    let length = curve.length;
    let w = length / n as f64;
    Ok(BoundaryQuadrature {
        s: (0..n).map(|i| i as f64 * w).collect(),
        w: vec![w; n],
        order: n - 1,
    })
}

impl BoundaryQuadrature {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.s.iter().zip(&self.w).map(|(&s, &w)| w * f(s)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::curve::{build_boundary, CurveDescriptor};

    #[test]
    fn length_and_trig_exactness() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 2.0 }, 64).unwrap();
        let q = boundary_quadrature(&curve, 32).unwrap();
        let total: f64 = q.integrate(|_| 1.0);
        assert!((total - curve.length).abs() < 1e-10);
        // modes below the node count integrate to zero exactly
        for k in 1..=q.order.min(10) {
            let l = curve.length;
            let v = q.integrate(|s| (2.0 * std::f64::consts::PI * k as f64 * s / l).cos());
            assert!(v.abs() < 1e-10, "mode {k} -> {v}");
        }
    }
}
