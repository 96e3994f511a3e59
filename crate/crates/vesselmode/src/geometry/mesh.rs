//! Conforming triangulation of star-shaped cross-sections.
//!
//! The mesh is a mapped structured disk grid: boundary vertices sit exactly
//! on the curve at uniform arclength, interior rings are scaled copies pulled
//! toward the centroid, and a few guarded Laplacian passes clean up the
//! interior. Radial grading toward the boundary is available for resolving
//! oscillatory boundary layers.

use super::curve::BoundaryCurve;
use crate::error::{Error, Result};

/// Boundary edge of the triangulation with its arclength interval on gamma.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryEdge {
    pub v0: usize,
    pub v1: usize,
    pub s0: f64,
    pub s1: f64,
}

#[derive(Debug, Clone)]
pub struct CrossSectionMesh {
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    /// counterclockwise-ordered boundary edges tiling [0, |gamma|)
    pub boundary_edges: Vec<BoundaryEdge>,
    /// max edge length actually realized
    pub h: f64,
}

#[derive(Debug, Clone)]
pub enum Grading {
    Uniform,
    /// geometric radial refinement toward the boundary; `first` is the
    /// nominal thickness of the outermost layer at the effective radius
    BoundaryLayer { first: f64, growth: f64 },
}

#[derive(Debug, Clone)]
pub struct MeshOptions {
    pub grading: Grading,
    pub smoothing_passes: usize,
}

impl Default for MeshOptions {
    fn default() -> Self {
        MeshOptions {
            grading: Grading::Uniform,
            smoothing_passes: 4,
        }
    }
}

pub fn mesh_domain(curve: &BoundaryCurve, h_target: f64) -> Result<CrossSectionMesh> {
    mesh_domain_with(curve, h_target, &MeshOptions::default())
}

pub fn mesh_domain_with(
    curve: &BoundaryCurve,
    h_target: f64,
    opts: &MeshOptions,
) -> Result<CrossSectionMesh> {
    let length = curve.length;
    if !(h_target > 0.0) || h_target >= length / 8.0 {
        return Err(Error::Refinement {
            h: h_target,
            reason: format!("must satisfy 0 < h < |gamma|/8 = {:.4}", length / 8.0),
        });
    }
    let max_kappa = curve
        .kappa
        .iter()
        .map(|k| k[0].abs())
        .fold(0.0f64, f64::max);
    if h_target * max_kappa > 0.5 {
        return Err(Error::Refinement {
            h: h_target,
            reason: format!(
                "curvature unresolved: h * max|kappa| = {:.3} > 0.5",
                h_target * max_kappa
            ),
        });
    }

    let c = curve.centroid();
    let n_b = ((length / h_target).ceil() as usize).max(12);
    let r_eff = (0..n_b)
        .map(|i| {
            let p = curve.eval_at(i as f64 * length / n_b as f64).point;
            ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt()
        })
        .sum::<f64>()
        / n_b as f64;

    // ring fractions, ascending, last = 1 (the boundary)
    let fractions = ring_fractions(r_eff, h_target, &opts.grading);
    let m = fractions.len();

    // vertex layout: center, then rings inner -> outer
    let mut vertices: Vec<[f64; 2]> = vec![c];
    let mut ring_start = Vec::with_capacity(m);
    let mut ring_count = Vec::with_capacity(m);
    let mut ring_params: Vec<Vec<f64>> = Vec::with_capacity(m);
    // rings graded tightly against the boundary keep the boundary node count
    for (j, &t) in fractions.iter().enumerate() {
        let n_j = if j + 1 == m {
            n_b
        } else if t > 0.7 {
            n_b
        } else {
            ((n_b as f64 * t).round() as usize).max(6)
        };
        let off = if (m - 1 - j) % 2 == 1 && n_j == n_b { 0.5 } else { 0.0 };
        let params: Vec<f64> = (0..n_j).map(|i| (i as f64 + off) / n_j as f64).collect();
        ring_start.push(vertices.len());
        ring_count.push(n_j);
        for &u in &params {
            let b = curve.eval_at(u * length).point;
            vertices.push([c[0] + t * (b[0] - c[0]), c[1] + t * (b[1] - c[1])]);
        }
        ring_params.push(params);
    }

    let mut triangles: Vec<[usize; 3]> = Vec::new();
    // center fan
    {
        let n0 = ring_count[0];
        for i in 0..n0 {
            triangles.push([0, ring_start[0] + i, ring_start[0] + (i + 1) % n0]);
        }
    }
    // zip consecutive rings
    for j in 0..m - 1 {
        zip_rings(
            &ring_params[j],
            ring_start[j],
            &ring_params[j + 1],
            ring_start[j + 1],
            &mut triangles,
        );
    }

    // interior smoothing; graded layers near the boundary are left alone
    let first_movable = 1; // center stays (it is the fan hub but may move too)
    let frozen_from = match opts.grading {
        Grading::Uniform => ring_start[m - 1],
        Grading::BoundaryLayer { .. } => {
            // freeze every ring whose fraction is beyond the uniform core
            let core_dt = h_target / r_eff;
            let mut idx = ring_start[m - 1];
            for j in (0..m).rev() {
                let gap = if j + 1 < m {
                    fractions[j + 1] - fractions[j]
                } else {
                    1.0 - fractions[j]
                };
                if gap < 0.8 * core_dt {
                    idx = ring_start[j];
                } else {
                    break;
                }
            }
            idx
        }
    };
    smooth(&mut vertices, &triangles, first_movable, frozen_from, opts.smoothing_passes);

    // enforce positive orientation
    for t in &mut triangles {
        if signed_area(&vertices, *t) < 0.0 {
            t.swap(1, 2);
        }
    }

    let boundary_edges: Vec<BoundaryEdge> = (0..n_b)
        .map(|i| BoundaryEdge {
            v0: ring_start[m - 1] + i,
            v1: ring_start[m - 1] + (i + 1) % n_b,
            s0: i as f64 * length / n_b as f64,
            s1: (i + 1) as f64 * length / n_b as f64,
        })
        .collect();

    let mesh = CrossSectionMesh {
        h: max_edge(&vertices, &triangles),
        vertices,
        triangles,
        boundary_edges,
    };

    let min_angle = mesh.min_angle_deg();
    if min_angle <= 15.0 {
        return Err(Error::Mesh(format!(
            "triangle quality floor violated: min angle {:.2} deg",
            min_angle
        )));
    }
    Ok(mesh)
}

fn ring_fractions(r_eff: f64, h: f64, grading: &Grading) -> Vec<f64> {
    match grading {
        Grading::Uniform => {
            let m = ((r_eff / h).round() as usize).max(2);
            (1..=m).map(|j| j as f64 / m as f64).collect()
        }
        Grading::BoundaryLayer { first, growth } => {
            let growth = growth.max(1.01);
            let core = h / r_eff;
            let mut gaps = Vec::new();
            let mut g = (first / r_eff).min(core);
            let mut total = 0.0;
            while total + g < 1.0 {
                gaps.push(g);
                total += g;
                g = (g * growth).min(core);
            }
            // distribute the remainder over the core gaps
            let rem = 1.0 - total;
            let ncore = gaps.iter().filter(|&&x| x >= core * 0.999).count().max(1);
            for x in gaps.iter_mut().rev().take(ncore) {
                *x += rem / ncore as f64;
            }
            let mut t = 1.0;
            let mut fr = Vec::with_capacity(gaps.len());
            for g in &gaps {
                fr.push(t);
                t -= g;
            }
            fr.reverse();
            fr
        }
    }
}

fn zip_rings(
    inner_u: &[f64],
    inner_start: usize,
    outer_u: &[f64],
    outer_start: usize,
    triangles: &mut Vec<[usize; 3]>,
) {
    let (p, q) = (inner_u.len(), outer_u.len());
    let param = |u: &[f64], i: usize| u[i % u.len()] + (i / u.len()) as f64;
    let (mut i, mut k) = (0usize, 0usize);
    while i < p || k < q {
        let advance_inner = if i >= p {
            false
        } else if k >= q {
            true
        } else {
            param(inner_u, i + 1) <= param(outer_u, k + 1)
        };
        if advance_inner {
            triangles.push([
                inner_start + (i + 1) % p,
                inner_start + i % p,
                outer_start + k % q,
            ]);
            i += 1;
        } else {
            triangles.push([
                outer_start + k % q,
                outer_start + (k + 1) % q,
                inner_start + i % p,
            ]);
            k += 1;
        }
    }
}

fn smooth(
    vertices: &mut [[f64; 2]],
    triangles: &[[usize; 3]],
    movable_from: usize,
    frozen_from: usize,
    passes: usize,
) {
    let n = vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ti, t) in triangles.iter().enumerate() {
        for a in 0..3 {
            incident[t[a]].push(ti);
            for b in 0..3 {
                if a != b && !adj[t[a]].contains(&t[b]) {
                    adj[t[a]].push(t[b]);
                }
            }
        }
    }
    for _ in 0..passes {
        for v in movable_from..frozen_from.min(n) {
            if adj[v].is_empty() {
                continue;
            }
            let mut avg = [0.0, 0.0];
            for &u in &adj[v] {
                avg[0] += vertices[u][0];
                avg[1] += vertices[u][1];
            }
            avg[0] /= adj[v].len() as f64;
            avg[1] /= adj[v].len() as f64;
            let old = vertices[v];
            vertices[v] = avg;
            // revert if any incident triangle flips or degenerates
            let bad = incident[v]
                .iter()
                .any(|&ti| signed_area(vertices, triangles[ti]) <= 1e-14);
            if bad {
                vertices[v] = old;
            }
        }
    }
}

fn signed_area(vertices: &[[f64; 2]], t: [usize; 3]) -> f64 {
    let (a, b, c) = (vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

fn max_edge(vertices: &[[f64; 2]], triangles: &[[usize; 3]]) -> f64 {
    let mut h: f64 = 0.0;
    for t in triangles {
        for e in 0..3 {
            let (a, b) = (vertices[t[e]], vertices[t[(e + 1) % 3]]);
            h = h.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
        }
    }
    h
}

impl CrossSectionMesh {
    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|&t| signed_area(&self.vertices, t))
            .sum()
    }

    pub fn min_angle_deg(&self) -> f64 {
        let mut min = f64::INFINITY;
        for t in &self.triangles {
            for a in 0..3 {
                let p = self.vertices[t[a]];
                let q = self.vertices[t[(a + 1) % 3]];
                let r = self.vertices[t[(a + 2) % 3]];
                let u = [q[0] - p[0], q[1] - p[1]];
                let v = [r[0] - p[0], r[1] - p[1]];
                let cos = (u[0] * v[0] + u[1] * v[1])
                    / ((u[0] * u[0] + u[1] * u[1]).sqrt() * (v[0] * v[0] + v[1] * v[1]).sqrt());
                min = min.min(cos.clamp(-1.0, 1.0).acos().to_degrees());
            }
        }
        min
    }

    /// Vertex indices on the boundary, counterclockwise.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        self.boundary_edges.iter().map(|e| e.v0).collect()
    }

    /// Sanity-check the boundary interval tiling.
    pub fn boundary_tiles_period(&self, length: f64) -> bool {
        let mut s = 0.0;
        for e in &self.boundary_edges {
            if (e.s0 - s).abs() > 1e-12 * length {
                return false;
            }
            s = e.s1;
        }
        (s - length).abs() < 1e-12 * length
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::curve::{build_boundary, CurveDescriptor};

    #[test]
    fn disk_area_converges_quadratically() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 256).unwrap();
        let coarse = mesh_domain(&curve, 0.1).unwrap();
        let fine = mesh_domain(&curve, 0.05).unwrap();
        let pi = std::f64::consts::PI;
        let e_coarse = (coarse.area() - pi).abs();
        let e_fine = (fine.area() - pi).abs();
        assert!(e_coarse < 1e-2, "coarse area error {e_coarse}");
        assert!(
            e_coarse / e_fine >= 3.5,
            "area error ratio {:.2} below 3.5",
            e_coarse / e_fine
        );
    }

    #[test]
    fn too_coarse_is_refused() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 64).unwrap();
        assert!(matches!(
            mesh_domain(&curve, curve.length),
            Err(Error::Refinement { .. })
        ));
    }

    #[test]
    fn quality_and_tiling_hold_on_ellipse() {
        let curve = build_boundary(CurveDescriptor::Ellipse { a: 2.0, b: 1.0 }, 256).unwrap();
        let mesh = mesh_domain(&curve, 0.15).unwrap();
        assert!(mesh.min_angle_deg() > 15.0);
        assert!(mesh.boundary_tiles_period(curve.length));
        for t in &mesh.triangles {
            assert!(signed_area(&mesh.vertices, *t) > 0.0);
        }
        let exact = std::f64::consts::PI * 2.0; // pi a b
        assert!((mesh.area() - exact).abs() < 0.05 * exact);
    }

    #[test]
    fn graded_mesh_keeps_quality() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 256).unwrap();
        let mesh = mesh_domain_with(
            &curve,
            0.1,
            &MeshOptions {
                grading: Grading::BoundaryLayer {
                    first: 0.035,
                    growth: 1.3,
                },
                smoothing_passes: 4,
            },
        )
        .unwrap();
        assert!(mesh.min_angle_deg() > 15.0, "min angle {}", mesh.min_angle_deg());
        assert!((mesh.area() - std::f64::consts::PI).abs() < 1e-2);
    }
}
