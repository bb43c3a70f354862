use std::sync::Arc;

use super::basis::{eval_p1_basis, eval_p2_basis, Mat2, Vec2, P2_NODES};
use super::ElementMap;
use crate::mesh::{Point, TriMesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    P1,
    P2,
}

impl SpaceKind {
    pub fn local_dofs(self) -> usize {
        match self {
            SpaceKind::P1 => 3,
            SpaceKind::P2 => 6,
        }
    }
}

/// Continuous Lagrange space on a mesh, with a Dirichlet mask for the
/// homogeneous boundary condition.
///
/// Global numbering: vertex DOFs first (same index as the mesh vertex), then
/// for P2 one DOF per edge midpoint at `n_vertices + edge_index`.
#[derive(Debug, Clone)]
pub struct FeSpace {
    pub kind: SpaceKind,
    pub mesh: Arc<TriMesh>,
    pub dof_coords: Vec<Point>,
    cell_dofs: Vec<usize>,
    pub dirichlet_mask: Vec<bool>,
    /// Position of each DOF among the free DOFs (`None` on the boundary).
    pub free_index: Vec<Option<usize>>,
    /// Global indices of the free DOFs, increasing.
    pub free_dofs: Vec<usize>,
}

/// Value, gradient and Hessian of a discrete field at a point.
#[derive(Debug, Clone, Copy, Default)]
pub struct Jet {
    pub value: f64,
    pub grad: Vec2,
    pub hess: Mat2,
}

impl FeSpace {
    pub fn new(mesh: Arc<TriMesh>, kind: SpaceKind) -> Self {
        let nv = mesh.n_vertices();
        let mut dof_coords = mesh.vertices.clone();
        let mut dirichlet_mask = mesh.boundary_vertices();
        if kind == SpaceKind::P2 {
            for (e, edge) in mesh.edges.iter().enumerate() {
                dof_coords.push(mesh.edge_midpoint(e));
                dirichlet_mask.push(edge.boundary);
            }
        }
        let ld = kind.local_dofs();
        let mut cell_dofs = Vec::with_capacity(ld * mesh.n_triangles());
        for (t, edges) in mesh.triangles.iter().zip(&mesh.triangle_edges) {
            cell_dofs.extend_from_slice(t);
            if kind == SpaceKind::P2 {
                cell_dofs.extend(edges.iter().map(|&e| nv + e));
            }
        }
        let mut free_index = vec![None; dof_coords.len()];
        let mut free_dofs = Vec::new();
        for (i, &fixed) in dirichlet_mask.iter().enumerate() {
            if !fixed {
                free_index[i] = Some(free_dofs.len());
                free_dofs.push(i);
            }
        }
        Self { kind, mesh, dof_coords, cell_dofs, dirichlet_mask, free_index, free_dofs }
    }

    pub fn n_dofs(&self) -> usize {
        self.dof_coords.len()
    }

    pub fn n_free(&self) -> usize {
        self.free_dofs.len()
    }

    pub fn cell_dofs(&self, k: usize) -> &[usize] {
        let ld = self.kind.local_dofs();
        &self.cell_dofs[k * ld..(k + 1) * ld]
    }

    pub fn element_map(&self, k: usize) -> ElementMap {
        ElementMap::new(self.mesh.triangle_points(k))
    }

    /// Nodal interpolant (full vector, boundary DOFs included).
    pub fn interpolate(&self, f: impl Fn(Point) -> f64) -> Vec<f64> {
        self.dof_coords.iter().map(|&p| f(p)).collect()
    }

    pub fn restrict(&self, full: &[f64]) -> Vec<f64> {
        self.free_dofs.iter().map(|&i| full[i]).collect()
    }

    /// Full vector from free values, zero on the boundary.
    pub fn extend(&self, free: &[f64]) -> Vec<f64> {
        let mut full = vec![0.0; self.n_dofs()];
        for (&i, &v) in self.free_dofs.iter().zip(free) {
            full[i] = v;
        }
        full
    }

    /// Physical values, gradients and Hessians of the local basis at the
    /// barycentric point `l` of cell `k`.
    pub fn local_basis(&self, map: &ElementMap, l: [f64; 3]) -> ([f64; 6], [Vec2; 6], [Mat2; 6]) {
        let mut values = [0.0; 6];
        let mut grads = [[0.0; 2]; 6];
        let mut hess = [[[0.0; 2]; 2]; 6];
        match self.kind {
            SpaceKind::P2 => {
                let e = eval_p2_basis(l);
                for j in 0..6 {
                    values[j] = e.values[j];
                    grads[j] = map.grad(e.grads[j]);
                    hess[j] = map.hessian(e.hessians[j]);
                }
            }
            SpaceKind::P1 => {
                let e = eval_p1_basis(l);
                for j in 0..3 {
                    values[j] = e.values[j];
                    grads[j] = map.grad(e.grads[j]);
                }
            }
        }
        (values, grads, hess)
    }

    /// Evaluate the field with full coefficient vector `coeffs` on cell `k`.
    pub fn eval(&self, coeffs: &[f64], k: usize, map: &ElementMap, l: [f64; 3]) -> Jet {
        let (v, g, h) = self.local_basis(map, l);
        let mut jet = Jet::default();
        for (j, &dof) in self.cell_dofs(k).iter().enumerate() {
            let c = coeffs[dof];
            jet.value += c * v[j];
            for a in 0..2 {
                jet.grad[a] += c * g[j][a];
                for b in 0..2 {
                    jet.hess[a][b] += c * h[j][a][b];
                }
            }
        }
        jet
    }

    /// Barycentric coordinates of the local nodes of this space.
    pub fn local_nodes(&self) -> &'static [[f64; 3]] {
        match self.kind {
            SpaceKind::P2 => &P2_NODES,
            SpaceKind::P1 => &P2_NODES[..3],
        }
    }

    pub fn same_mesh(&self, other: &FeSpace) -> bool {
        Arc::ptr_eq(&self.mesh, &other.mesh)
    }
}
