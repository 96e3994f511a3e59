//! Plain-text mesh interchange.
//!
//! Format: header `nodes <N> triangles <T> bedges <B>`, then N lines `x y`,
//! T lines `i j k` (0-based), B lines `i j s_lo s_hi`.

use std::io::{BufRead, Write};

use super::mesh::{BoundaryEdge, CrossSectionMesh};
use crate::error::{Error, Result};

pub fn write_mesh<W: Write>(mesh: &CrossSectionMesh, out: &mut W) -> Result<()> {
    writeln!(
        out,
        "nodes {} triangles {} bedges {}",
        mesh.vertices.len(),
        mesh.triangles.len(),
        mesh.boundary_edges.len()
    )?;
    for v in &mesh.vertices {
        writeln!(out, "{:.17e} {:.17e}", v[0], v[1])?;
    }
    for t in &mesh.triangles {
        writeln!(out, "{} {} {}", t[0], t[1], t[2])?;
    }
    for e in &mesh.boundary_edges {
        writeln!(out, "{} {} {:.17e} {:.17e}", e.v0, e.v1, e.s0, e.s1)?;
    }
    Ok(())
}

pub fn read_mesh<R: BufRead>(input: R) -> Result<CrossSectionMesh> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Mesh("empty mesh file".into()))??;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "nodes" || toks[2] != "triangles" || toks[4] != "bedges" {
        return Err(Error::Mesh(format!("bad mesh header: `{header}`")));
    }
    let n: usize = parse(toks[1], "node count")?;
    let t: usize = parse(toks[3], "triangle count")?;
    let b: usize = parse(toks[5], "bedge count")?;

    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        let line = next_line(&mut lines, format!("node {i}"))?;
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|x| parse(x, "node coordinate"))
            .collect::<Result<_>>()?;
        if v.len() != 2 {
            return Err(Error::Mesh(format!("node {i}: expected `x y`")));
        }
        vertices.push([v[0], v[1]]);
    }
    let mut triangles = Vec::with_capacity(t);
    for i in 0..t {
        let line = next_line(&mut lines, format!("triangle {i}"))?;
        let v: Vec<usize> = line
            .split_whitespace()
            .map(|x| parse(x, "triangle index"))
            .collect::<Result<_>>()?;
        if v.len() != 3 || v.iter().any(|&k| k >= n) {
            return Err(Error::Mesh(format!("triangle {i}: bad indices")));
        }
        triangles.push([v[0], v[1], v[2]]);
    }
    let mut boundary_edges = Vec::with_capacity(b);
    for i in 0..b {
        let line = next_line(&mut lines, format!("bedge {i}"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::Mesh(format!("bedge {i}: expected `i j s_lo s_hi`")));
        }
        boundary_edges.push(BoundaryEdge {
            v0: parse(toks[0], "bedge v0")?,
            v1: parse(toks[1], "bedge v1")?,
            s0: parse(toks[2], "bedge s_lo")?,
            s1: parse(toks[3], "bedge s_hi")?,
        });
    }
    let mut h: f64 = 0.0;
    for t in &triangles {
        for e in 0..3 {
            let (a, b) = (vertices[t[e]], vertices[t[(e + 1) % 3]]);
            h = h.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
        }
    }
    Ok(CrossSectionMesh {
        vertices,
        triangles,
        boundary_edges,
        h,
    })
}

fn next_line(
    lines: &mut std::io::Lines<impl BufRead>,
    what: String,
) -> Result<String> {
    lines
        .next()
        .ok_or_else(|| Error::Mesh(format!("unexpected end of file at {what}")))?
        .map_err(Error::from)
}

fn parse<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Mesh(format!("cannot parse {what}: `{tok}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::curve::{build_boundary, CurveDescriptor};
    use crate::geometry::mesh::mesh_domain;

    #[test]
    fn round_trip() {
        let curve = build_boundary(CurveDescriptor::Circle { radius: 1.0 }, 64).unwrap();
        let mesh = mesh_domain(&curve, 0.3).unwrap();
        let mut buf = Vec::new();
        write_mesh(&mesh, &mut buf).unwrap();
        let back = read_mesh(std::io::BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(back.vertices.len(), mesh.vertices.len());
        assert_eq!(back.triangles, mesh.triangles);
        assert!((back.area() - mesh.area()).abs() < 1e-14);
    }
}
