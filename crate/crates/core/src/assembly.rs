//! Global matrices and load vectors: L2 mass, H1 stiffness, the P1-to-P2
//! gradient coupling and the C0 interior penalty form.
//!
//! All matrices are assembled over the full DOF set; boundary elimination
//! happens later by restriction to the free DOFs.

use crate::error::{Error, Result};
use crate::fem::{dot, edge_quadrature, frobenius, mat_vec, tri_quadrature, FeSpace, Mat2, SpaceKind, Vec2};
use crate::mesh::Point;
use crate::sparse::{SparseMatrix, TripletBuilder};

pub const DEFAULT_SIGMA_IP: f64 = 10.0;

/// Selects the parts of the interior penalty form, for testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct C0ipTerms {
    pub volume: bool,
    pub consistency: bool,
    pub penalty: bool,
}

impl C0ipTerms {
    pub const ALL: C0ipTerms = C0ipTerms { volume: true, consistency: true, penalty: true };
}

fn mass_degree(space: &FeSpace) -> usize {
    match space.kind {
        SpaceKind::P2 => 4,
        SpaceKind::P1 => 2,
    }
}

pub fn mass_matrix(space: &FeSpace) -> SparseMatrix {
    mass_matrix_with_degree(space, mass_degree(space)).expect("built-in rule")
}

/// `M[i][j] = (phi_j, phi_i)`
pub fn mass_matrix_with_degree(space: &FeSpace, degree: usize) -> Result<SparseMatrix> {
    let q = tri_quadrature(degree)?;
    let ld = space.kind.local_dofs();
    let n = space.n_dofs();
    let mut t = TripletBuilder::with_capacity(n, n, space.mesh.n_triangles() * ld * ld);
    for k in 0..space.mesh.n_triangles() {
        let map = space.element_map(k);
        let dofs = space.cell_dofs(k);
        let mut local = [[0.0; 6]; 6];
        for (l, w) in q.iter() {
            let (v, _, _) = space.local_basis(&map, *l);
            let wd = w * map.det.abs();
            for i in 0..ld {
                for j in 0..ld {
                    local[i][j] += wd * v[i] * v[j];
                }
            }
        }
        scatter(&mut t, dofs, dofs, &local);
    }
    let mut m = t.build();
    m.mark_symmetric(1e-12)?;
    Ok(m)
}

pub fn h1_matrix(space: &FeSpace) -> SparseMatrix {
    h1_matrix_with_degree(space, 2).expect("built-in rule")
}

/// `K[i][j] = (grad phi_j, grad phi_i)`
pub fn h1_matrix_with_degree(space: &FeSpace, degree: usize) -> Result<SparseMatrix> {
    let q = tri_quadrature(degree)?;
    let ld = space.kind.local_dofs();
    let n = space.n_dofs();
    let mut t = TripletBuilder::with_capacity(n, n, space.mesh.n_triangles() * ld * ld);
    for k in 0..space.mesh.n_triangles() {
        let map = space.element_map(k);
        let dofs = space.cell_dofs(k);
        let mut local = [[0.0; 6]; 6];
        for (l, w) in q.iter() {
            let (_, g, _) = space.local_basis(&map, *l);
            let wd = w * map.det.abs();
            for i in 0..ld {
                for j in 0..ld {
                    local[i][j] += wd * dot(g[i], g[j]);
                }
            }
        }
        scatter(&mut t, dofs, dofs, &local);
    }
    let mut m = t.build();
    m.mark_symmetric(1e-12)?;
    Ok(m)
}

/// `B[i][j] = (grad chi_j, grad v_i)` with rows in `v_space`, columns in `w_space`.
pub fn coupling_matrix(v_space: &FeSpace, w_space: &FeSpace) -> Result<SparseMatrix> {
    if !v_space.same_mesh(w_space) && !same_geometry(v_space, w_space) {
        return Err(Error::InvalidArgument("coupling spaces live on different meshes".into()));
    }
    let q = tri_quadrature(2)?;
    let (lv, lw) = (v_space.kind.local_dofs(), w_space.kind.local_dofs());
    let mut t = TripletBuilder::with_capacity(v_space.n_dofs(), w_space.n_dofs(), v_space.mesh.n_triangles() * lv * lw);
    for k in 0..v_space.mesh.n_triangles() {
        let map = v_space.element_map(k);
        let mut local = [[0.0; 6]; 6];
        for (l, w) in q.iter() {
            let (_, gv, _) = v_space.local_basis(&map, *l);
            let (_, gw, _) = w_space.local_basis(&map, *l);
            let wd = w * map.det.abs();
            for i in 0..lv {
                for j in 0..lw {
                    local[i][j] += wd * dot(gw[j], gv[i]);
                }
            }
        }
        scatter(&mut t, v_space.cell_dofs(k), w_space.cell_dofs(k), &local);
    }
    Ok(t.build())
}

fn same_geometry(a: &FeSpace, b: &FeSpace) -> bool {
    a.mesh.vertices == b.mesh.vertices && a.mesh.triangles == b.mesh.triangles
}

pub fn c0ip_matrix(space: &FeSpace, sigma_ip: f64) -> SparseMatrix {
    c0ip_matrix_terms(space, sigma_ip, C0ipTerms::ALL).expect("valid penalty")
}

/// `A[i][j] = a_h(phi_j, phi_i)`, restricted to the selected terms.
pub fn c0ip_matrix_terms(space: &FeSpace, sigma_ip: f64, terms: C0ipTerms) -> Result<SparseMatrix> {
    if space.kind != SpaceKind::P2 {
        return Err(Error::InvalidArgument("interior penalty form needs the P2 space".into()));
    }
    if !(sigma_ip > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma_ip must be positive, got {sigma_ip}")));
    }
    let mesh = &space.mesh;
    let n = space.n_dofs();
    let mut t = TripletBuilder::with_capacity(n, n, mesh.n_triangles() * 36 + mesh.n_edges() * 81);

    if terms.volume {
        let centroid = [1.0 / 3.0; 3];
        for k in 0..mesh.n_triangles() {
            let map = space.element_map(k);
            let (_, _, h) = space.local_basis(&map, centroid);
            let area = map.area();
            let mut local = [[0.0; 6]; 6];
            for i in 0..6 {
                for j in 0..6 {
                    local[i][j] = area * frobenius(h[i], h[j]);
                }
            }
            let dofs = space.cell_dofs(k);
            scatter(&mut t, dofs, dofs, &local);
        }
    }

    if terms.consistency || terms.penalty {
        let gq = edge_quadrature(2)?;
        for e in 0..mesh.n_edges() {
            let traces = EdgeTraces::new(space, e);
            let edge = &mesh.edges[e];
            let nrm = edge.normal;
            let nd = traces.dofs.len();
            let mut local = vec![0.0; nd * nd];
            for (&s, w) in gq.iter() {
                let x = traces.point(s);
                let (jump, avg) = traces.jump_and_average(x);
                let wl = w * edge.length;
                for i in 0..nd {
                    let ji = dot(jump[i], nrm);
                    let ai = mat_vec(avg[i], nrm);
                    for j in 0..nd {
                        let jj = dot(jump[j], nrm);
                        let aj = mat_vec(avg[j], nrm);
                        let mut v = 0.0;
                        if terms.consistency {
                            v -= dot(jump[j], ai) + dot(jump[i], aj);
                        }
                        if terms.penalty {
                            v += sigma_ip / edge.length * jj * ji;
                        }
                        local[i * nd + j] += wl * v;
                    }
                }
            }
            for i in 0..nd {
                for j in 0..nd {
                    t.add(traces.dofs[i], traces.dofs[j], local[i * nd + j]);
                }
            }
        }
    }
    let mut m = t.build();
    m.mark_symmetric(1e-10 * m.values().iter().fold(1.0_f64, |a, v| a.max(v.abs())))?;
    Ok(m)
}

/// Local view of the basis functions living on the triangles adjacent to an edge.
struct EdgeTraces<'a> {
    space: &'a FeSpace,
    a: Point,
    b: Point,
    sides: Vec<(usize, crate::fem::ElementMap)>,
    /// union of the DOFs of both sides
    dofs: Vec<usize>,
    /// position in `dofs` of each local DOF of each side
    slots: Vec<[usize; 6]>,
}

impl<'a> EdgeTraces<'a> {
    fn new(space: &'a FeSpace, e: usize) -> Self {
        let mesh = &space.mesh;
        let edge = &mesh.edges[e];
        let mut sides = vec![(edge.plus(), space.element_map(edge.plus()))];
        if let Some(m) = edge.minus() {
            sides.push((m, space.element_map(m)));
        }
        let mut dofs: Vec<usize> = Vec::with_capacity(9);
        let mut slots = Vec::with_capacity(2);
        for &(k, _) in &sides {
            let mut s = [0; 6];
            for (j, &d) in space.cell_dofs(k).iter().enumerate() {
                s[j] = match dofs.iter().position(|&x| x == d) {
                    Some(p) => p,
                    None => {
                        dofs.push(d);
                        dofs.len() - 1
                    }
                };
            }
            slots.push(s);
        }
        let [ia, ib] = edge.vertices;
        Self { space, a: mesh.vertices[ia], b: mesh.vertices[ib], sides, dofs, slots }
    }

    fn point(&self, s: f64) -> Point {
        [self.a[0] + s * (self.b[0] - self.a[0]), self.a[1] + s * (self.b[1] - self.a[1])]
    }

    /// Gradient jump and Hessian average of every union basis function at `x`.
    fn jump_and_average(&self, x: Point) -> (Vec<Vec2>, Vec<Mat2>) {
        let nd = self.dofs.len();
        let mut jump = vec![[0.0; 2]; nd];
        let mut avg = vec![[[0.0; 2]; 2]; nd];
        let (sign, weight) = if self.sides.len() == 2 { ([1.0, -1.0], 0.5) } else { ([1.0, 0.0], 1.0) };
        for (side, (_, map)) in self.sides.iter().enumerate() {
            let l = map.to_barycentric(x);
            let (_, g, h) = self.space.local_basis(map, l);
            for j in 0..6 {
                let u = self.slots[side][j];
                for a in 0..2 {
                    jump[u][a] += sign[side] * g[j][a];
                    for b in 0..2 {
                        avg[u][a][b] += weight * h[j][a][b];
                    }
                }
            }
        }
        (jump, avg)
    }
}

fn scatter(t: &mut TripletBuilder, rows: &[usize], cols: &[usize], local: &[[f64; 6]; 6]) {
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            t.add(r, c, local[i][j]);
        }
    }
}

/// `F[i] = (f(t, .), phi_i)`
pub fn load_vector(space: &FeSpace, data: impl Fn(f64, Point) -> f64, t: f64, quad_degree: usize) -> Result<Vec<f64>> {
    let q = tri_quadrature(quad_degree)?;
    let mut out = vec![0.0; space.n_dofs()];
    for k in 0..space.mesh.n_triangles() {
        let map = space.element_map(k);
        let dofs = space.cell_dofs(k);
        for (l, w) in q.iter() {
            let (v, _, _) = space.local_basis(&map, *l);
            let fx = data(t, map.to_physical(*l)) * w * map.det.abs();
            for (i, &d) in dofs.iter().enumerate() {
                out[d] += fx * v[i];
            }
        }
    }
    Ok(out)
}

/// `F[i] = (g, grad phi_i)` for a vector field `g`.
pub fn gradient_load_vector(space: &FeSpace, field: impl Fn(Point) -> Vec2, quad_degree: usize) -> Result<Vec<f64>> {
    let q = tri_quadrature(quad_degree)?;
    let mut out = vec![0.0; space.n_dofs()];
    for k in 0..space.mesh.n_triangles() {
        let map = space.element_map(k);
        let dofs = space.cell_dofs(k);
        for (l, w) in q.iter() {
            let (_, g, _) = space.local_basis(&map, *l);
            let gx = field(map.to_physical(*l));
            let wd = w * map.det.abs();
            for (i, &d) in dofs.iter().enumerate() {
                out[d] += wd * dot(gx, g[i]);
            }
        }
    }
    Ok(out)
}

/// Exact field subtracted from a discrete one inside the broken norm.
pub trait SecondOrderField {
    fn grad(&self, p: Point) -> Vec2;
    fn hess(&self, p: Point) -> Mat2;
    /// Points where the field must not be evaluated.
    fn excluded(&self, _p: Point) -> bool {
        false
    }
}

/// Squared volume and penalty parts of `||v - exact||_h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrokenNormParts {
    pub volume: f64,
    pub penalty: f64,
}

impl BrokenNormParts {
    pub fn norm(&self) -> f64 {
        (self.volume + self.penalty).sqrt()
    }
}

/// `||v||_h` of the discrete field with full coefficient vector `coeffs`.
pub fn broken_h_norm(space: &FeSpace, sigma_ip: f64, coeffs: &[f64]) -> f64 {
    broken_h_norm_parts(space, sigma_ip, coeffs, None, 2, 2).expect("built-in rules").norm()
}

/// Broken norm of `v_h - exact` (or of `v_h` alone) by direct element and
/// edge quadrature.
pub fn broken_h_norm_parts(
    space: &FeSpace,
    sigma_ip: f64,
    coeffs: &[f64],
    exact: Option<&dyn SecondOrderField>,
    volume_degree: usize,
    edge_points: usize,
) -> Result<BrokenNormParts> {
    if space.kind != SpaceKind::P2 {
        return Err(Error::InvalidArgument("broken norm needs the P2 space".into()));
    }
    let q = tri_quadrature(volume_degree)?;
    let gq = edge_quadrature(edge_points)?;
    let mesh = &space.mesh;
    let mut volume = 0.0;
    for k in 0..mesh.n_triangles() {
        let map = space.element_map(k);
        for (l, w) in q.iter() {
            let mut hs = space.eval(coeffs, k, &map, *l).hess;
            if let Some(ex) = exact {
                let p = map.to_physical(*l);
                if ex.excluded(p) {
                    continue;
                }
                let he = ex.hess(p);
                for a in 0..2 {
                    for b in 0..2 {
                        hs[a][b] -= he[a][b];
                    }
                }
            }
            volume += w * map.det.abs() * frobenius(hs, hs);
        }
    }
    let mut penalty = 0.0;
    for edge in &mesh.edges {
        let [ia, ib] = edge.vertices;
        let (a, b) = (mesh.vertices[ia], mesh.vertices[ib]);
        let mut sides = vec![edge.plus()];
        sides.extend(edge.minus());
        let mut acc = 0.0;
        for (&s, w) in gq.iter() {
            let x = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
            if exact.is_some_and(|ex| ex.excluded(x)) {
                continue;
            }
            let mut jump = 0.0;
            for (side, &k) in sides.iter().enumerate() {
                let map = space.element_map(k);
                let mut g = space.eval(coeffs, k, &map, map.to_barycentric(x)).grad;
                if let Some(ex) = exact {
                    let ge = ex.grad(x);
                    g = [g[0] - ge[0], g[1] - ge[1]];
                }
                let sign = if side == 0 { 1.0 } else { -1.0 };
                jump += sign * dot(g, edge.normal);
            }
            acc += w * jump * jump;
        }
        penalty += sigma_ip * acc;
    }
    Ok(BrokenNormParts { volume, penalty })
}
