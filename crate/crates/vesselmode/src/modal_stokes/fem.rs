//! Quadratic (P2) scalar elements on the cross-section triangulation.
//!
//! Degrees of freedom sit at vertices and edge midpoints. Boundary P2 nodes
//! land at uniform arclength spacing |gamma| / (2 n_b), which is also the
//! collocation grid used by the wall model.

use num_complex::Complex64;

use crate::geometry::{BoundaryCurve, CrossSectionMesh};

/// 7-point degree-5 triangle rule; weights sum to one, scale by the area.
pub const TRI_QP: [([f64; 3], f64); 7] = [
    ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 0.225),
    (
        [0.059715871789770, 0.470142064105115, 0.470142064105115],
        0.132394152788506,
    ),
    (
        [0.470142064105115, 0.059715871789770, 0.470142064105115],
        0.132394152788506,
    ),
    (
        [0.470142064105115, 0.470142064105115, 0.059715871789770],
        0.132394152788506,
    ),
    (
        [0.797426985353087, 0.101286507323456, 0.101286507323456],
        0.125939180544827,
    ),
    (
        [0.101286507323456, 0.797426985353087, 0.101286507323456],
        0.125939180544827,
    ),
    (
        [0.101286507323456, 0.101286507323456, 0.797426985353087],
        0.125939180544827,
    ),
];

/// 4-point Gauss-Legendre on [0, 1].
pub const SEG_QP: [(f64, f64); 1] = [(0.5, 1.0)]; // placeholder replaced below
pub const SEG_QP4: [(f64, f64); 4] = [
    (0.069431844202974, 0.173927422568727),
    (0.330009478207572, 0.326072577431273),
    (0.669990521792428, 0.326072577431273),
    (0.930568155797026, 0.173927422568727),
];

/// P2 shape functions at barycentric coordinates (l1, l2, l3).
pub fn p2_shape(l: [f64; 3]) -> [f64; 6] {
    [
        l[0] * (2.0 * l[0] - 1.0),
        l[1] * (2.0 * l[1] - 1.0),
        l[2] * (2.0 * l[2] - 1.0),
        4.0 * l[0] * l[1],
        4.0 * l[1] * l[2],
        4.0 * l[2] * l[0],
    ]
}

/// Gradients with respect to (l2, l3) treating l1 = 1 - l2 - l3.
fn p2_shape_ref_grad(l: [f64; 3]) -> [[f64; 2]; 6] {
    let (l1, l2, l3) = (l[0], l[1], l[2]);
    [
        [1.0 - 4.0 * l1, 1.0 - 4.0 * l1],
        [4.0 * l2 - 1.0, 0.0],
        [0.0, 4.0 * l3 - 1.0],
        [4.0 * (l1 - l2), -4.0 * l2],
        [4.0 * l3, 4.0 * l2],
        [-4.0 * l3, 4.0 * (l1 - l3)],
    ]
}

/// One boundary P2 node with its arclength position.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryNode {
    pub node: usize,
    pub s: f64,
}

/// Boundary edge as a 1D P2 element: endpoint nodes, midside node, interval.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySegment {
    pub nodes: [usize; 3], // v0, mid, v1 in increasing s
    pub s0: f64,
    pub s1: f64,
}

/// P2 nodal space over a triangulation.
pub struct P2Space {
    pub n_vertices: usize,
    pub n_edges: usize,
    /// per-triangle global node ids: 3 vertices then 3 edge nodes
    pub tri_nodes: Vec<[usize; 6]>,
    /// coordinates of all P2 nodes (vertices then edge midpoints)
    pub coords: Vec<[f64; 2]>,
    /// triangle geometry: vertex coords per triangle
    tri_verts: Vec<[[f64; 2]; 3]>,
    pub areas: Vec<f64>,
    /// boundary nodes sorted by arclength (uniform spacing)
    pub boundary_nodes: Vec<BoundaryNode>,
    /// boundary segments in arclength order
    pub boundary_segments: Vec<BoundarySegment>,
    pub is_boundary: Vec<bool>,
    /// map full node id -> interior index (for Dirichlet-eliminated systems)
    pub interior_index: Vec<Option<usize>>,
    pub n_interior: usize,
}

impl P2Space {
    pub fn new(mesh: &CrossSectionMesh, curve: Option<&BoundaryCurve>) -> Self {
        let nv = mesh.vertices.len();
        let mut edge_map: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut tri_nodes = Vec::with_capacity(mesh.triangles.len());
        let mut edge_ends: Vec<(usize, usize)> = Vec::new();
        for t in &mesh.triangles {
            let pairs = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])];
            let mut nodes = [t[0], t[1], t[2], 0, 0, 0];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let key = (a.min(b), a.max(b));
                let e = *edge_map.entry(key).or_insert_with(|| {
                    edge_ends.push(key);
                    edge_ends.len() - 1
                });
                nodes[3 + k] = nv + e;
            }
            tri_nodes.push(nodes);
        }
        let n_edges = edge_ends.len();
        let mut coords = Vec::with_capacity(nv + n_edges);
        coords.extend_from_slice(&mesh.vertices);
        for &(a, b) in &edge_ends {
            coords.push([
                0.5 * (mesh.vertices[a][0] + mesh.vertices[b][0]),
                0.5 * (mesh.vertices[a][1] + mesh.vertices[b][1]),
            ]);
        }

        // boundary structure: vertices carry s from the tagged edges; the
        // edge midnode sits at the interval midpoint and is snapped to the
        // curve when one is supplied
        let mut is_boundary = vec![false; nv + n_edges];
        let mut boundary_nodes = Vec::new();
        let mut boundary_segments = Vec::new();
        for be in &mesh.boundary_edges {
            let key = (be.v0.min(be.v1), be.v0.max(be.v1));
            let e = *edge_map
                .get(&key)
                .expect("boundary edge missing from triangulation");
            let mid = nv + e;
            let smid = 0.5 * (be.s0 + be.s1);
            if let Some(c) = curve {
                coords[mid] = c.eval_at(smid).point;
            }
            is_boundary[be.v0] = true;
            is_boundary[mid] = true;
            boundary_nodes.push(BoundaryNode {
                node: be.v0,
                s: be.s0,
            });
            boundary_nodes.push(BoundaryNode { node: mid, s: smid });
            boundary_segments.push(BoundarySegment {
                nodes: [be.v0, mid, be.v1],
                s0: be.s0,
                s1: be.s1,
            });
        }
        boundary_nodes.sort_by(|a, b| a.s.partial_cmp(&b.s).unwrap());

        let mut interior_index = vec![None; nv + n_edges];
        let mut n_interior = 0;
        for i in 0..nv + n_edges {
            if !is_boundary[i] {
                interior_index[i] = Some(n_interior);
                n_interior += 1;
            }
        }

        let tri_verts = mesh
            .triangles
            .iter()
            .map(|t| [mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]])
            .collect::<Vec<_>>();
        let areas = mesh
            .triangles
            .iter()
            .map(|t| {
                let (a, b, c) = (mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
                0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
            })
            .collect();

        P2Space {
            n_vertices: nv,
            n_edges,
            tri_nodes,
            coords,
            tri_verts,
            areas,
            boundary_nodes,
            boundary_segments,
            is_boundary,
            interior_index,
            n_interior,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_vertices + self.n_edges
    }

    /// Physical gradients of the 6 shape functions on triangle `ti` at
    /// barycentric point `l`, and the quadrature scale (area factor).
    pub fn grads(&self, ti: usize, l: [f64; 3]) -> ([[f64; 2]; 6], f64) {
        let v = self.tri_verts[ti];
        let j = [
            [v[1][0] - v[0][0], v[2][0] - v[0][0]],
            [v[1][1] - v[0][1], v[2][1] - v[0][1]],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let inv_t = [
            [j[1][1] / det, -j[1][0] / det],
            [-j[0][1] / det, j[0][0] / det],
        ];
        let gref = p2_shape_ref_grad(l);
        let mut g = [[0.0; 2]; 6];
        for i in 0..6 {
            g[i][0] = inv_t[0][0] * gref[i][0] + inv_t[0][1] * gref[i][1];
            g[i][1] = inv_t[1][0] * gref[i][0] + inv_t[1][1] * gref[i][1];
        }
        (g, det.abs() * 0.5)
    }

    pub fn point_at(&self, ti: usize, l: [f64; 3]) -> [f64; 2] {
        let v = self.tri_verts[ti];
        [
            l[0] * v[0][0] + l[1] * v[1][0] + l[2] * v[2][0],
            l[0] * v[0][1] + l[1] * v[1][1] + l[2] * v[2][1],
        ]
    }

    /// Stiffness, mass, and unit-load triplets in one pass.
    pub fn scalar_matrices(&self) -> ScalarMatrices {
        let n = self.n_nodes();
        let mut k = Vec::new();
        let mut m = Vec::new();
        let mut load = vec![Complex64::new(0.0, 0.0); n];
        for ti in 0..self.tri_nodes.len() {
            let nodes = self.tri_nodes[ti];
            for (bary, w) in TRI_QP {
                let (g, area) = self.grads(ti, bary);
                let phi = p2_shape(bary);
                let wq = w * area;
                for a in 0..6 {
                    load[nodes[a]] += Complex64::new(wq * phi[a], 0.0);
                    for b in 0..6 {
                        k.push((
                            nodes[a],
                            nodes[b],
                            Complex64::new(wq * (g[a][0] * g[b][0] + g[a][1] * g[b][1]), 0.0),
                        ));
                        m.push((nodes[a], nodes[b], Complex64::new(wq * phi[a] * phi[b], 0.0)));
                    }
                }
            }
        }
        ScalarMatrices {
            stiffness: k,
            mass: m,
            unit_load: load,
        }
    }

    /// Evaluate a nodal field at an arbitrary point by triangle scan.
    pub fn eval(&self, values: &[Complex64], p: [f64; 2]) -> Option<Complex64> {
        for ti in 0..self.tri_nodes.len() {
            let v = self.tri_verts[ti];
            let det = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1])
                - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0]);
            let l2 = ((p[0] - v[0][0]) * (v[2][1] - v[0][1])
                - (p[1] - v[0][1]) * (v[2][0] - v[0][0]))
                / det;
            let l3 = ((v[1][0] - v[0][0]) * (p[1] - v[0][1])
                - (v[1][1] - v[0][1]) * (p[0] - v[0][0]))
                / det;
            let l1 = 1.0 - l2 - l3;
            if l1 >= -1e-10 && l2 >= -1e-10 && l3 >= -1e-10 {
                let phi = p2_shape([l1, l2, l3]);
                let nodes = self.tri_nodes[ti];
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..6 {
                    acc += values[nodes[a]] * phi[a];
                }
                return Some(acc);
            }
        }
        None
    }

    /// L2 norm of a nodal field via the element quadrature.
    pub fn l2_norm(&self, values: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for ti in 0..self.tri_nodes.len() {
            let nodes = self.tri_nodes[ti];
            for (bary, w) in TRI_QP {
                let phi = p2_shape(bary);
                let area = self.areas[ti];
                let mut v = Complex64::new(0.0, 0.0);
                for a in 0..6 {
                    v += values[nodes[a]] * phi[a];
                }
                acc += w * area * v.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// H1 seminorm of a nodal field.
    pub fn h1_seminorm(&self, values: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for ti in 0..self.tri_nodes.len() {
            let nodes = self.tri_nodes[ti];
            for (bary, w) in TRI_QP {
                let (g, area) = self.grads(ti, bary);
                let mut gx = Complex64::new(0.0, 0.0);
                let mut gy = Complex64::new(0.0, 0.0);
                for a in 0..6 {
                    gx += values[nodes[a]] * g[a][0];
                    gy += values[nodes[a]] * g[a][1];
                }
                acc += w * area * (gx.norm_sqr() + gy.norm_sqr());
            }
        }
        acc.sqrt()
    }

    /// Boundary mass matrix triplets over the arclength-parametrized
    /// boundary segments, in terms of full node ids.
    pub fn boundary_mass_triplets(&self) -> Vec<(usize, usize, Complex64)> {
        let mut t = Vec::new();
        for seg in &self.boundary_segments {
            let ds = seg.s1 - seg.s0;
            for (x, w) in SEG_QP4 {
                let phi = seg_shape(x);
                for a in 0..3 {
                    for b in 0..3 {
                        t.push((
                            seg.nodes[a],
                            seg.nodes[b],
                            Complex64::new(w * ds * phi[a] * phi[b], 0.0),
                        ));
                    }
                }
            }
        }
        t
    }

    /// Integral of a nodal field along the boundary.
    pub fn boundary_integral(&self, values: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for seg in &self.boundary_segments {
            let ds = seg.s1 - seg.s0;
            for (x, w) in SEG_QP4 {
                let phi = seg_shape(x);
                let mut v = Complex64::new(0.0, 0.0);
                for a in 0..3 {
                    v += values[seg.nodes[a]] * phi[a];
                }
                acc += v * (w * ds);
            }
        }
        acc
    }
}

/// 1D quadratic shape functions on [0, 1] with nodes at 0, 1/2, 1.
pub fn seg_shape(t: f64) -> [f64; 3] {
    [
        (1.0 - t) * (1.0 - 2.0 * t),
        4.0 * t * (1.0 - t),
        t * (2.0 * t - 1.0),
    ]
}

pub fn seg_shape_deriv(t: f64) -> [f64; 3] {
    [4.0 * t - 3.0, 4.0 - 8.0 * t, 4.0 * t - 1.0]
}

pub struct ScalarMatrices {
    pub stiffness: Vec<(usize, usize, Complex64)>,
    pub mass: Vec<(usize, usize, Complex64)>,
    /// integral of each basis function
    pub unit_load: Vec<Complex64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_boundary, mesh_domain, CurveDescriptor};
    use crate::linalg::CsrMatrix;

    #[test]
    fn partition_of_unity_and_mass_total() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 64).unwrap();
        let mesh = mesh_domain(&curve, 0.25).unwrap();
        let space = P2Space::new(&mesh, Some(&curve));
        let sm = space.scalar_matrices();
        let total: Complex64 = sm.unit_load.iter().sum();
        // integral of 1 = mesh area (straight-edge polygonal area)
        assert!((total.re - mesh.area()).abs() < 1e-12);

        // mass row sums also integrate basis functions
        let m = CsrMatrix::from_triplets(space.n_nodes(), &sm.mass);
        let ones = vec![Complex64::new(1.0, 0.0); space.n_nodes()];
        let row_sums = m.mul_vec(&ones);
        for (a, b) in row_sums.iter().zip(sm.unit_load.iter()) {
            assert!((a - b).norm() < 1e-12);
        }

        // stiffness annihilates constants
        let k = CsrMatrix::from_triplets(space.n_nodes(), &sm.stiffness);
        let kv = k.mul_vec(&ones);
        for v in kv {
            assert!(v.norm() < 1e-10);
        }
    }

    #[test]
    fn boundary_nodes_are_uniform_in_s() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 64).unwrap();
        let mesh = mesh_domain(&curve, 0.3).unwrap();
        let space = P2Space::new(&mesh, Some(&curve));
        let n = space.boundary_nodes.len();
        let ds = curve.length / n as f64;
        for (i, bn) in space.boundary_nodes.iter().enumerate() {
            assert!((bn.s - i as f64 * ds).abs() < 1e-10);
        }
        // boundary mass integrates 1 to |gamma|
        let bm = space.boundary_mass_triplets();
        let total: f64 = bm.iter().map(|t| t.2.re).sum();
        assert!((total - curve.length).abs() < 1e-10);
    }

    #[test]
    fn quadratic_fields_interpolate_exactly() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 64).unwrap();
        let mesh = mesh_domain(&curve, 0.3).unwrap();
        let space = P2Space::new(&mesh, Some(&curve));
        let f =
            |p: [f64; 2]| Complex64::new(1.0 + 2.0 * p[0] + p[1] + 0.5 * p[0] * p[1], p[0] * p[0]);
        let values: Vec<Complex64> = space.coords.iter().map(|&p| f(p)).collect();
        let q = space.eval(&values, [0.21, -0.33]).unwrap();
        assert!((q - f([0.21, -0.33])).norm() < 1e-11);
    }
}
