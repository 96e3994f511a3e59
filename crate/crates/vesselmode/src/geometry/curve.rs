//! Closed boundary curves parametrized by arclength.
//!
//! Curvature follows the convention kappa = zeta1'' zeta2' - zeta2'' zeta1'
//! (derivatives in arclength), which gives kappa = -1/R on a counterclockwise
//! circle and a turning number of -2*pi for every simple counterclockwise
//! curve. Most texts use the opposite sign; every consumer in this crate
//! expects this one.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Analytic descriptor of a simple closed curve, traversed counterclockwise.
#[derive(Debug, Clone)]
pub enum CurveDescriptor {
    Circle {
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    /// Star-shaped: r(theta) = r0 + sum_k (cos_coeffs[k-1] cos(k theta)
    ///                                    + sin_coeffs[k-1] sin(k theta))
    Star {
        r0: f64,
        cos_coeffs: Vec<f64>,
        sin_coeffs: Vec<f64>,
    },
}

impl CurveDescriptor {
    /// Position and first two theta-derivatives.
    fn eval(&self, theta: f64) -> ([f64; 2], [f64; 2], [f64; 2]) {
        match self {
            CurveDescriptor::Circle { radius } => {
                let (s, c) = theta.sin_cos();
                (
                    [radius * c, radius * s],
                    [-radius * s, radius * c],
                    [-radius * c, -radius * s],
                )
            }
            CurveDescriptor::Ellipse { a, b } => {
                let (s, c) = theta.sin_cos();
                ([a * c, b * s], [-a * s, b * c], [-a * c, -b * s])
            }
            CurveDescriptor::Star {
                r0,
                cos_coeffs,
                sin_coeffs,
            } => {
                let (s, c) = theta.sin_cos();
                let mut r = *r0;
                let mut dr = 0.0;
                let mut ddr = 0.0;
                for (i, (&ck, &sk)) in cos_coeffs.iter().zip(sin_coeffs.iter()).enumerate() {
                    let k = (i + 1) as f64;
                    let (skt, ckt) = (k * theta).sin_cos();
                    r += ck * ckt + sk * skt;
                    dr += k * (-ck * skt + sk * ckt);
                    ddr += k * k * (-ck * ckt - sk * skt);
                }
                let p = [r * c, r * s];
                let dp = [dr * c - r * s, dr * s + r * c];
                let ddp = [
                    ddr * c - 2.0 * dr * s - r * c,
                    ddr * s + 2.0 * dr * c - r * s,
                ];
                (p, dp, ddp)
            }
        }
    }
}

/// Arclength-sampled closed curve with tangent/normal frame and curvature.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    descriptor: CurveDescriptor,
    /// uniform arclength nodes s_i = i * length / n
    pub nodes: Vec<[f64; 2]>,
    /// unit tangents d zeta / ds
    pub tangents: Vec<[f64; 2]>,
    /// outward unit normals
    pub normals: Vec<[f64; 2]>,
    /// curvature samples in the paper convention (circle: -1/R)
    pub kappa: Vec<[f64; 1]>,
    pub length: f64,
    /// dense theta -> arclength table for inverting s(theta)
    arc_thetas: Vec<f64>,
    arc_lengths: Vec<f64>,
    /// interpolation metadata: ("trigonometric", node count)
    pub interpolant: (String, usize),
    kappa_smoothing: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct CurveOptions {
    /// Optional low-pass on the curvature samples: keep this many Fourier
    /// modes. No default filter is applied.
    pub kappa_smoothing: Option<usize>,
}

/// Build an arclength-reparametrized curve with `n_nodes` uniform nodes.
pub fn build_boundary(descriptor: CurveDescriptor, n_nodes: usize) -> Result<BoundaryCurve> {
    build_boundary_with(descriptor, n_nodes, &CurveOptions::default())
}

pub fn build_boundary_with(
    descriptor: CurveDescriptor,
    n_nodes: usize,
    opts: &CurveOptions,
) -> Result<BoundaryCurve> {
    if n_nodes < 16 {
        return Err(Error::Geometry(format!(
            "need at least 16 nodes, got {n_nodes}"
        )));
    }
    validate_descriptor(&descriptor)?;

    // dense cumulative arclength table over theta in [0, 2*pi]
    let panels = 32 * n_nodes;
    let mut arc_thetas = Vec::with_capacity(panels + 1);
    let mut arc_lengths = Vec::with_capacity(panels + 1);
    arc_thetas.push(0.0);
    arc_lengths.push(0.0);
    let dtheta = 2.0 * std::f64::consts::PI / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let a = k as f64 * dtheta;
        acc += gauss5(a, a + dtheta, |t| speed(&descriptor, t));
        arc_thetas.push(a + dtheta);
        arc_lengths.push(acc);
    }
    let length = acc;

    // uniform arclength nodes via Newton on the cumulative table
    let mut nodes = Vec::with_capacity(n_nodes);
    let mut tangents = Vec::with_capacity(n_nodes);
    let mut normals = Vec::with_capacity(n_nodes);
    let mut kappa = Vec::with_capacity(n_nodes);
    for i in 0..n_nodes {
        let s = i as f64 * length / n_nodes as f64;
        let theta = invert_arclength(&descriptor, &arc_thetas, &arc_lengths, s)?;
        let (p, dp, ddp) = descriptor.eval(theta);
        let g = (dp[0] * dp[0] + dp[1] * dp[1]).sqrt();
        let tau = [dp[0] / g, dp[1] / g];
        nodes.push(p);
        tangents.push(tau);
        normals.push([tau[1], -tau[0]]);
        // standard curvature (x'y'' - y'x'')/g^3, negated to this crate's sign
        let k_std = (dp[0] * ddp[1] - dp[1] * ddp[0]) / (g * g * g);
        kappa.push([-k_std]);
    }

    // cusp check: tangent turning between adjacent nodes must stay bounded
    for i in 0..n_nodes {
        let j = (i + 1) % n_nodes;
        let dot = tangents[i][0] * tangents[j][0] + tangents[i][1] * tangents[j][1];
        let angle = dot.clamp(-1.0, 1.0).acos();
        if angle > std::f64::consts::PI / 3.0 {
            return Err(Error::CuspDetected {
                s: i as f64 * length / n_nodes as f64,
                angle_deg: angle.to_degrees(),
            });
        }
    }
    check_simple(&nodes)?;

    if let Some(modes) = opts.kappa_smoothing {
        let raw: Vec<f64> = kappa.iter().map(|k| k[0]).collect();
        let smoothed = fourier_lowpass(&raw, modes);
        for (k, v) in kappa.iter_mut().zip(smoothed) {
            k[0] = v;
        }
    }

    Ok(BoundaryCurve {
        descriptor,
        nodes,
        tangents,
        normals,
        kappa,
        length,
        arc_thetas,
        arc_lengths,
        interpolant: ("trigonometric".to_string(), n_nodes),
        kappa_smoothing: opts.kappa_smoothing,
    })
}

impl BoundaryCurve {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_s(&self, i: usize) -> f64 {
        i as f64 * self.length / self.nodes.len() as f64
    }

    pub fn centroid(&self) -> [f64; 2] {
        let n = self.nodes.len() as f64;
        let mut c = [0.0, 0.0];
        for p in &self.nodes {
            c[0] += p[0] / n;
            c[1] += p[1] / n;
        }
        c
    }

    pub fn kappa_at_node(&self, i: usize) -> f64 {
        self.kappa[i][0]
    }

    /// Point, unit tangent, outward normal and curvature at arclength s
    /// (wrapped periodically).
    pub fn eval_at(&self, s: f64) -> PointFrame {
        let s = s.rem_euclid(self.length);
        let theta = invert_arclength(&self.descriptor, &self.arc_thetas, &self.arc_lengths, s)
            .expect("arclength inversion on a validated curve");
        let (p, dp, ddp) = self.descriptor.eval(theta);
        let g = (dp[0] * dp[0] + dp[1] * dp[1]).sqrt();
        let tau = [dp[0] / g, dp[1] / g];
        let k_std = (dp[0] * ddp[1] - dp[1] * ddp[0]) / (g * g * g);
        let mut kappa = -k_std;
        if self.kappa_smoothing.is_some() {
            // smoothed curvature is only available at nodes; blend linearly
            let n = self.nodes.len() as f64;
            let x = s / self.length * n;
            let i0 = (x.floor() as usize) % self.nodes.len();
            let i1 = (i0 + 1) % self.nodes.len();
            let w = x - x.floor();
            kappa = (1.0 - w) * self.kappa[i0][0] + w * self.kappa[i1][0];
        }
        PointFrame {
            point: p,
            tangent: tau,
            normal: [tau[1], -tau[0]],
            kappa,
        }
    }

    /// Turning-number integral of the curvature samples (trapezoid in s).
    pub fn turning_integral(&self) -> f64 {
        let ds = self.length / self.nodes.len() as f64;
        self.kappa.iter().map(|k| k[0]).sum::<f64>() * ds
    }

    /// Check the arclength parametrization at the sample nodes by spectral
    /// differentiation of the node coordinates; returns max | |zeta'| - 1 |.
    pub fn parametrization_defect(&self) -> f64 {
        let n = self.nodes.len();
        let xs: Vec<f64> = self.nodes.iter().map(|p| p[0]).collect();
        let ys: Vec<f64> = self.nodes.iter().map(|p| p[1]).collect();
        let dx = fourier_derivative(&xs, self.length);
        let dy = fourier_derivative(&ys, self.length);
        (0..n)
            .map(|i| ((dx[i] * dx[i] + dy[i] * dy[i]).sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Gap between the end and the start of one full arclength period.
    pub fn closure_gap(&self) -> f64 {
        let end = self.eval_at(self.length - 1e-13).point;
        let start = self.nodes[0];
        ((end[0] - start[0]).powi(2) + (end[1] - start[1]).powi(2)).sqrt()
    }
}

/// Frame data at a boundary point.
#[derive(Debug, Clone, Copy)]
pub struct PointFrame {
    pub point: [f64; 2],
    pub tangent: [f64; 2],
    pub normal: [f64; 2],
    pub kappa: f64,
}

/// Result of the rigid-motion sample-matrix rank test.
#[derive(Debug, Clone, Copy)]
pub struct RankCheck {
    pub min_singular_value: f64,
    /// true when the value is bounded away from zero, i.e. the only boundary
    /// trace of a planar rigid motion that vanishes on the curve is zero
    pub admissible: bool,
}

/// Smallest singular value (after column normalization) of the 3-column
/// matrix [zeta1', zeta2', zeta2 zeta1' - zeta1 zeta2'] sampled over the
/// curve nodes.
pub fn rigid_motion_rank_check(curve: &BoundaryCurve) -> Result<RankCheck> {
    let zeta: Vec<[f64; 2]> = curve.nodes.clone();
    let dzeta: Vec<[f64; 2]> = curve.tangents.clone();
    rank_check_from_samples(&zeta, &dzeta)
}

/// Low-level form of the rank test, usable on raw samples (including
/// degenerate ones that do not form a valid curve).
pub fn rank_check_from_samples(zeta: &[[f64; 2]], dzeta: &[[f64; 2]]) -> Result<RankCheck> {
    let n = zeta.len();
    if n < 3 || dzeta.len() != n {
        return Err(Error::InsufficientData(format!(
            "rank check needs at least 3 samples, got {n}"
        )));
    }
    let mut m = DMatrix::zeros(n, 3);
    for i in 0..n {
        m[(i, 0)] = dzeta[i][0];
        m[(i, 1)] = dzeta[i][1];
        m[(i, 2)] = zeta[i][1] * dzeta[i][0] - zeta[i][0] * dzeta[i][1];
    }
    for c in 0..3 {
        let norm = m.column(c).norm();
        if norm > 1e-14 {
            for i in 0..n {
                m[(i, c)] /= norm;
            }
        }
    }
    let svd = m.svd(false, false);
    let smin = svd
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(RankCheck {
        min_singular_value: smin,
        admissible: smin > 1e-6,
    })
}

fn validate_descriptor(d: &CurveDescriptor) -> Result<()> {
    match d {
        CurveDescriptor::Circle { radius } if *radius <= 0.0 => {
            Err(Error::Geometry("circle radius must be positive".into()))
        }
        CurveDescriptor::Ellipse { a, b } if *a <= 0.0 || *b <= 0.0 => {
            Err(Error::Geometry("ellipse semi-axes must be positive".into()))
        }
        CurveDescriptor::Star {
            r0,
            cos_coeffs,
            sin_coeffs,
        } => {
            let amp: f64 = cos_coeffs
                .iter()
                .chain(sin_coeffs.iter())
                .map(|c| c.abs())
                .sum();
            if amp >= *r0 {
                return Err(Error::Geometry(format!(
                    "star radius may vanish: r0 = {r0}, total harmonic amplitude = {amp}"
                )));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn speed(d: &CurveDescriptor, theta: f64) -> f64 {
    let (_, dp, _) = d.eval(theta);
    (dp[0] * dp[0] + dp[1] * dp[1]).sqrt()
}

fn gauss5(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    // 5-point Gauss-Legendre on [a, b]
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
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    (0..5).map(|i| W[i] * f(c + h * X[i])).sum::<f64>() * h
}

/// Invert s(theta) = target using the dense table for bracketing and Newton
/// with the exact speed for polish; |arc(theta) - s| < 1e-12 * length.
fn invert_arclength(
    d: &CurveDescriptor,
    arc_thetas: &[f64],
    arc_lengths: &[f64],
    s: f64,
) -> Result<f64> {
    let total = *arc_lengths.last().unwrap();
    let target = s.clamp(0.0, total);
    let idx = match arc_lengths.binary_search_by(|v| v.partial_cmp(&target).unwrap()) {
        Ok(i) => i,
        Err(i) => i.saturating_sub(1),
    }
    .min(arc_lengths.len() - 2);
    let mut theta = arc_thetas[idx]
        + (arc_thetas[idx + 1] - arc_thetas[idx])
            * ((target - arc_lengths[idx]) / (arc_lengths[idx + 1] - arc_lengths[idx]).max(1e-300));
    let arc_at = |t: f64| -> f64 {
        // cumulative length at t: table value + local Gauss correction
        let j = ((t / arc_thetas[arc_thetas.len() - 1]) * (arc_thetas.len() - 1) as f64)
            .floor()
            .clamp(0.0, (arc_thetas.len() - 2) as f64) as usize;
        arc_lengths[j] + gauss5(arc_thetas[j], t, |x| speed(d, x))
    };
    for _ in 0..40 {
        let f = arc_at(theta) - target;
        if f.abs() < 1e-12 * total.max(1.0) {
            return Ok(theta);
        }
        let g = speed(d, theta).max(1e-300);
        theta -= f / g;
    }
    Err(Error::Geometry(
        "arclength reparametrization did not converge".into(),
    ))
}

fn check_simple(nodes: &[[f64; 2]]) -> Result<()> {
    let n = nodes.len();
    for i in 0..n {
        let (a1, a2) = (nodes[i], nodes[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent through the wrap
            }
            let (b1, b2) = (nodes[j], nodes[(j + 1) % n]);
            if segments_intersect(a1, a2, b1, b2) {
                return Err(Error::SelfIntersection(i, j));
            }
        }
    }
    Ok(())
}

fn segments_intersect(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    };
    let (d1, d2) = (d(q1, q2, p1), d(q1, q2, p2));
    let (d3, d4) = (d(p1, p2, q1), d(p1, p2, q2));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Spectral derivative of periodic samples over one period of given length.
pub fn fourier_derivative(samples: &[f64], period: f64) -> Vec<f64> {
    let n = samples.len();
    let coeffs = dft(samples);
    let mut out = vec![0.0; n];
    let base = 2.0 * std::f64::consts::PI / n as f64;
    for k in 1..n {
        if 2 * k == n {
            continue; // Nyquist mode has no consistent odd derivative
        }
        let signed = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        let freq = 2.0 * std::f64::consts::PI * signed / period;
        let (re, im) = coeffs[k];
        for (j, o) in out.iter_mut().enumerate() {
            let ang = base * (k * j) as f64;
            // Re[ i freq (re + i im) e^{i ang} ]
            *o += -freq * (re * ang.sin() + im * ang.cos());
        }
    }
    out
}

fn fourier_lowpass(samples: &[f64], keep_modes: usize) -> Vec<f64> {
    let n = samples.len();
    let coeffs = dft(samples);
    let base = 2.0 * std::f64::consts::PI / n as f64;
    let mut out = vec![coeffs[0].0; n];
    for k in 1..=keep_modes.min((n - 1) / 2) {
        let (re, im) = coeffs[k];
        for (j, o) in out.iter_mut().enumerate() {
            let ang = base * (k * j) as f64;
            *o += 2.0 * (re * ang.cos() - im * ang.sin());
        }
    }
    out
}

/// Direct DFT of real samples: coefficient k as (re, im), normalized by 1/n.
fn dft(samples: &[f64]) -> Vec<(f64, f64)> {
    let n = samples.len();
    let base = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &v) in samples.iter().enumerate() {
                let ang = base * (k * j) as f64;
                re += v * ang.cos();
                im -= v * ang.sin();
            }
            (re / n as f64, im / n as f64)
        })
        .collect()
}
