//! Structured triangulations of the unit square and the L-shaped domain.
//!
//! Every mesh carries its full edge table: the assembly of the interior
//! penalty form needs, per edge, the adjacent triangles, the edge length and a
//! unit normal with a fixed orientation.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Geometric domain a mesh was generated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// (0,1)^2
    UnitSquare,
    /// [-1,1]^2 minus [-1,0]^2, reentrant corner at the origin
    LShape,
    /// anything built from a raw triangle list
    Custom,
}

impl Domain {
    pub fn area(self) -> Option<f64> {
        match self {
            Domain::UnitSquare => Some(1.0),
            Domain::LShape => Some(3.0),
            Domain::Custom => None,
        }
    }

    /// Distance from `p` to the boundary of the domain (for points inside or on it).
    pub fn boundary_distance(self, p: Point) -> Option<f64> {
        let [x, y] = p;
        match self {
            Domain::UnitSquare => Some(x.min(1.0 - x).min(y).min(1.0 - y).abs()),
            Domain::LShape => {
                let outer = (x + 1.0).min(1.0 - x).min(y + 1.0).min(1.0 - y).abs();
                // reentrant sides: {0} x [-1,0] and [-1,0] x {0}
                let d1 = seg_dist(p, [0.0, -1.0], [0.0, 0.0]);
                let d2 = seg_dist(p, [-1.0, 0.0], [0.0, 0.0]);
                Some(outer.min(d1).min(d2))
            }
            Domain::Custom => None,
        }
    }
}

fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let l2 = d[0] * d[0] + d[1] * d[1];
    let s = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / l2).clamp(0.0, 1.0);
    let q = [a[0] + s * d[0], a[1] + s * d[1]];
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    /// Endpoints, `vertices[0] < vertices[1]`.
    pub vertices: [usize; 2],
    /// Adjacent triangles; `triangles[1]` is `None` on the boundary.
    /// For interior edges `triangles[0] < triangles[1]`.
    pub triangles: [Option<usize>; 2],
    pub boundary: bool,
    pub length: f64,
    /// Unit normal pointing from `triangles[0]` towards `triangles[1]`
    /// (outward on boundary edges).
    pub normal: [f64; 2],
}

impl Edge {
    pub fn plus(&self) -> usize {
        self.triangles[0].expect("edge without triangle")
    }

    pub fn minus(&self) -> Option<usize> {
        self.triangles[1]
    }
}

#[derive(Debug, Clone)]
pub struct TriMesh {
    pub vertices: Vec<Point>,
    /// Counterclockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<Edge>,
    /// `triangle_edges[k][i]` is the edge joining local vertices `i` and `(i+1) % 3`.
    pub triangle_edges: Vec<[usize; 3]>,
    /// Largest triangle diameter.
    pub h: f64,
    pub domain: Domain,
}

impl TriMesh {
    /// Uniform mesh of (0,1)^2 with `n` squares per side, each split along
    /// its bottom-left to top-right diagonal.
    pub fn unit_square(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("unit square needs n >= 1".into()));
        }
        let np = n + 1;
        let mut vertices = Vec::with_capacity(np * np);
        for j in 0..np {
            for i in 0..np {
                vertices.push([i as f64 / n as f64, j as f64 / n as f64]);
            }
        }
        let id = |i: usize, j: usize| j * np + i;
        let mut triangles = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for i in 0..n {
                push_cell(&mut triangles, id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            }
        }
        Self::build(vertices, triangles, Domain::UnitSquare)
    }

    /// Uniform mesh of [-1,1]^2 \ [-1,0]^2 with `n` cells per unit length.
    /// The reentrant corner (origin) is always a vertex.
    pub fn lshape(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("L-shape needs n >= 1".into()));
        }
        let m = 2 * n;
        let np = m + 1;
        let removed_cell = |i: usize, j: usize| i < n && j < n;
        let mut used = vec![false; np * np];
        for j in 0..m {
            for i in 0..m {
                if !removed_cell(i, j) {
                    for (a, b) in [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)] {
                        used[b * np + a] = true;
                    }
                }
            }
        }
        let mut index = vec![usize::MAX; np * np];
        let mut vertices = Vec::new();
        for j in 0..np {
            for i in 0..np {
                if used[j * np + i] {
                    index[j * np + i] = vertices.len();
                    vertices.push([-1.0 + i as f64 / n as f64, -1.0 + j as f64 / n as f64]);
                }
            }
        }
        let id = |i: usize, j: usize| index[j * np + i];
        let mut triangles = Vec::with_capacity(6 * n * n);
        for j in 0..m {
            for i in 0..m {
                if !removed_cell(i, j) {
                    push_cell(&mut triangles, id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
                }
            }
        }
        Self::build(vertices, triangles, Domain::LShape)
    }

    /// Mesh from an explicit vertex/triangle list. Clockwise triangles are
    /// reoriented; degenerate ones are rejected.
    pub fn from_triangles(vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        Self::build(vertices, triangles, Domain::Custom)
    }

    fn build(vertices: Vec<Point>, mut triangles: Vec<[usize; 3]>, domain: Domain) -> Result<Self> {
        for t in triangles.iter_mut() {
            if t.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidArgument(format!("triangle {t:?} references a missing vertex")));
            }
            let a = signed_area(&vertices, *t);
            if a.abs() < 1e-300 {
                return Err(Error::InvalidArgument(format!("degenerate triangle {t:?}")));
            }
            if a < 0.0 {
                t.swap(1, 2);
            }
        }
        let (edges, triangle_edges) = edge_topology(&vertices, &triangles)?;
        let h = triangles
            .iter()
            .map(|t| {
                (0..3)
                    .map(|k| dist(vertices[t[k]], vertices[t[(k + 1) % 3]]))
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        Ok(Self { vertices, triangles, edges, triangle_edges, h, domain })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_points(&self, k: usize) -> [Point; 3] {
        let t = self.triangles[k];
        [self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]]
    }

    pub fn area(&self, k: usize) -> f64 {
        signed_area(&self.vertices, self.triangles[k])
    }

    pub fn total_area(&self) -> f64 {
        (0..self.n_triangles()).map(|k| self.area(k)).sum()
    }

    /// Boundary flag per vertex (endpoint of some boundary edge).
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut flag = vec![false; self.n_vertices()];
        for e in self.edges.iter().filter(|e| e.boundary) {
            flag[e.vertices[0]] = true;
            flag[e.vertices[1]] = true;
        }
        flag
    }

    pub fn edge_midpoint(&self, e: usize) -> Point {
        let [a, b] = self.edges[e].vertices;
        let (p, q) = (self.vertices[a], self.vertices[b]);
        [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]
    }

    /// Copy with every interior edge's adjacent triangles swapped and its
    /// normal negated. This intentionally breaks the lower-index orientation
    /// rule; assembled interior penalty operators must not notice.
    #[doc(hidden)]
    pub fn with_flipped_interior_edges(&self) -> Self {
        let mut out = self.clone();
        for e in out.edges.iter_mut().filter(|e| !e.boundary) {
            e.triangles.swap(0, 1);
            e.normal = [-e.normal[0], -e.normal[1]];
        }
        out
    }

    /// Plain-text dump with `#vertices` and `#triangles` sections.
    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "#vertices {}", self.n_vertices())?;
        for p in &self.vertices {
            writeln!(w, "{:.17e} {:.17e}", p[0], p[1])?;
        }
        writeln!(w, "#triangles {}", self.n_triangles())?;
        for t in &self.triangles {
            writeln!(w, "{} {} {}", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

fn push_cell(tris: &mut Vec<[usize; 3]>, v00: usize, v10: usize, v01: usize, v11: usize) {
    tris.push([v00, v10, v11]);
    tris.push([v00, v11, v01]);
}

fn dist(p: Point, q: Point) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

fn signed_area(v: &[Point], t: [usize; 3]) -> f64 {
    let (a, b, c) = (v[t[0]], v[t[1]], v[t[2]]);
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}

/// Edge table in lexicographic order of the sorted vertex pairs, together
/// with the per-triangle local-edge map.
pub fn edge_topology(vertices: &[Point], triangles: &[[usize; 3]]) -> Result<(Vec<Edge>, Vec<[usize; 3]>)> {
    let mut adjacency: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (k, t) in triangles.iter().enumerate() {
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            adjacency.entry((a.min(b), a.max(b))).or_default().push((k, i));
        }
    }
    let mut edges = Vec::with_capacity(adjacency.len());
    let mut triangle_edges = vec![[usize::MAX; 3]; triangles.len()];
    for (idx, (&(a, b), adj)) in adjacency.iter().enumerate() {
        if adj.len() > 2 {
            return Err(Error::Topology(a, b));
        }
        for &(k, i) in adj {
            triangle_edges[k][i] = idx;
        }
        let mut tris: Vec<usize> = adj.iter().map(|&(k, _)| k).collect();
        tris.sort_unstable();
        let (pa, pb) = (vertices[a], vertices[b]);
        let length = dist(pa, pb);
        let mut normal = [(pb[1] - pa[1]) / length, -(pb[0] - pa[0]) / length];
        // orient away from the centroid of the first triangle
        let t0 = triangles[tris[0]];
        let c = [
            (vertices[t0[0]][0] + vertices[t0[1]][0] + vertices[t0[2]][0]) / 3.0,
            (vertices[t0[0]][1] + vertices[t0[1]][1] + vertices[t0[2]][1]) / 3.0,
        ];
        let m = [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])];
        if normal[0] * (m[0] - c[0]) + normal[1] * (m[1] - c[1]) < 0.0 {
            normal = [-normal[0], -normal[1]];
        }
        edges.push(Edge {
            vertices: [a, b],
            triangles: [Some(tris[0]), tris.get(1).copied()],
            boundary: tris.len() == 1,
            length,
            normal,
        });
    }
    Ok((edges, triangle_edges))
}
