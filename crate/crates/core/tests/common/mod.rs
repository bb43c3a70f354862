//! Independent brute-force evaluation used as a test oracle: monomial bases
//! from Vandermonde inversion, Duffy-mapped Gauss rules, its own edge scan,
//! and the scheme's equations evaluated in weak form on dense matrices.

#![allow(dead_code)]

pub mod checks;
pub mod data;
pub mod rational;

use plate_c0ip::fem::FeSpace;
use plate_c0ip::mesh::{Point, TriMesh};
use plate_c0ip::mms::ProblemData;
use plate_c0ip::model::ModelCoefficients;

pub type Dense = Vec<Vec<f64>>;

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![0.0; c]; r]
}

pub fn mat_vec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

pub fn transpose(a: &Dense) -> Dense {
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    (0..c).map(|j| (0..r).map(|i| a[i][j]).collect()).collect()
}

/// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration on P_k.
pub fn gauss(k: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for n in 2..=k {
                let p2 = ((2 * n - 1) as f64 * x * p1 - (n - 1) as f64 * p0) / n as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        out.push((0.5 * (1.0 - x), 1.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Points and weights on a physical triangle (collapsed square).
pub fn triangle_rule(p: [Point; 3], k: usize) -> Vec<(Point, f64)> {
    let g = gauss(k);
    let area2 = ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1])).abs();
    let mut out = Vec::new();
    for &(u, wu) in &g {
        for &(v, wv) in &g {
            let x = [
                p[0][0] + u * ((1.0 - v) * (p[1][0] - p[0][0]) + v * (p[2][0] - p[0][0])),
                p[0][1] + u * ((1.0 - v) * (p[1][1] - p[0][1]) + v * (p[2][1] - p[0][1])),
            ];
            out.push((x, wu * wv * u * area2));
        }
    }
    out
}

fn solve_dense(mut a: Dense, mut b: Dense) -> Dense {
    let n = a.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, piv);
        b.swap(c, piv);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in 0..n {
                    a[r][k] -= f * a[c][k];
                }
                for k in 0..b[r].len() {
                    b[r][k] -= f * b[c][k];
                }
            }
        }
    }
    for r in 0..n {
        let d = a[r][r];
        for v in b[r].iter_mut() {
            *v /= d;
        }
    }
    b
}

/// Local Lagrange basis on one triangle as monomial coefficients.
#[derive(Clone)]
pub struct LocalBasis {
    degree: usize,
    /// `coef[m][j]`: coefficient of monomial `m` in basis function `j`
    coef: Dense,
}

fn monomials(degree: usize, x: Point) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    if degree == 1 {
        vec![1.0, a, b]
    } else {
        vec![1.0, a, b, a * a, a * b, b * b]
    }
}

fn monomial_grads(degree: usize, x: Point) -> Vec<[f64; 2]> {
    let (a, b) = (x[0], x[1]);
    let mut g = vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
    if degree == 2 {
        g.extend([[2.0 * a, 0.0], [b, a], [0.0, 2.0 * b]]);
    }
    g
}

fn monomial_hess(degree: usize) -> Vec<[[f64; 2]; 2]> {
    let mut h = vec![[[0.0; 2]; 2]; 3];
    if degree == 2 {
        h.extend([[[2.0, 0.0], [0.0, 0.0]], [[0.0, 1.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 2.0]]]);
    }
    h
}

impl LocalBasis {
    pub fn new(degree: usize, nodes: &[Point]) -> Self {
        let v: Dense = nodes.iter().map(|&x| monomials(degree, x)).collect();
        let n = nodes.len();
        let id: Dense = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        Self { degree, coef: solve_dense(v, id) }
    }

    pub fn values(&self, x: Point) -> Vec<f64> {
        let m = monomials(self.degree, x);
        (0..self.coef.len()).map(|j| (0..m.len()).map(|k| self.coef[k][j] * m[k]).sum()).collect()
    }

    pub fn grads(&self, x: Point) -> Vec<[f64; 2]> {
        let g = monomial_grads(self.degree, x);
        (0..self.coef.len())
            .map(|j| {
                let mut out = [0.0; 2];
                for k in 0..g.len() {
                    out[0] += self.coef[k][j] * g[k][0];
                    out[1] += self.coef[k][j] * g[k][1];
                }
                out
            })
            .collect()
    }

    pub fn hessians(&self) -> Vec<[[f64; 2]; 2]> {
        let h = monomial_hess(self.degree);
        (0..self.coef.len())
            .map(|j| {
                let mut out = [[0.0; 2]; 2];
                for k in 0..h.len() {
                    for a in 0..2 {
                        for b in 0..2 {
                            out[a][b] += self.coef[k][j] * h[k][a][b];
                        }
                    }
                }
                out
            })
            .collect()
    }
}

fn same(p: Point, q: Point) -> bool {
    (p[0] - q[0]).abs() < 1e-13 && (p[1] - q[1]).abs() < 1e-13
}

/// Per-triangle nodes mapped to the library's global numbering by position.
pub struct DenseSpace {
    pub degree: usize,
    pub n: usize,
    pub cells: Vec<(Vec<usize>, LocalBasis, [Point; 3])>,
    pub coords: Vec<Point>,
}

impl DenseSpace {
    pub fn new(mesh: &TriMesh, lib: &FeSpace, degree: usize) -> Self {
        let coords = lib.dof_coords.clone();
        let mut cells = Vec::new();
        for t in &mesh.triangles {
            let p = [mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]];
            let mut nodes: Vec<Point> = p.to_vec();
            if degree == 2 {
                for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                    nodes.push([0.5 * (p[a][0] + p[b][0]), 0.5 * (p[a][1] + p[b][1])]);
                }
            }
            let dofs = nodes
                .iter()
                .map(|&x| coords.iter().position(|&c| same(c, x)).expect("node present in library numbering"))
                .collect();
            cells.push((dofs, LocalBasis::new(degree, &nodes), p));
        }
        Self { degree, n: coords.len(), cells, coords }
    }

    /// Cell index containing `x` (closed triangle).
    fn locate(&self, x: Point) -> usize {
        self.cells
            .iter()
            .position(|(_, _, p)| {
                let d = |a: Point, b: Point, c: Point| (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
                let s = d(p[0], p[1], p[2]).signum();
                [d(p[0], p[1], x), d(p[1], p[2], x), d(p[2], p[0], x)].iter().all(|&v| v * s >= -1e-13)
            })
            .unwrap()
    }

    pub fn grad_at(&self, coeffs: &[f64], cell: usize, x: Point) -> [f64; 2] {
        let (dofs, basis, _) = &self.cells[cell];
        let g = basis.grads(x);
        let mut out = [0.0; 2];
        for (j, &d) in dofs.iter().enumerate() {
            out[0] += coeffs[d] * g[j][0];
            out[1] += coeffs[d] * g[j][1];
        }
        out
    }

    pub fn value_at(&self, coeffs: &[f64], x: Point) -> f64 {
        let (dofs, basis, _) = &self.cells[self.locate(x)];
        basis.values(x).iter().zip(dofs).map(|(v, &d)| v * coeffs[d]).sum()
    }
}

const Q: usize = 7;

pub fn mass(s: &DenseSpace) -> Dense {
    let mut m = zeros(s.n, s.n);
    for (dofs, b, p) in &s.cells {
        for (x, w) in triangle_rule(*p, Q) {
            let v = b.values(x);
            for (i, &di) in dofs.iter().enumerate() {
                for (j, &dj) in dofs.iter().enumerate() {
                    m[di][dj] += w * v[i] * v[j];
                }
            }
        }
    }
    m
}

pub fn stiffness(s: &DenseSpace) -> Dense {
    let mut m = zeros(s.n, s.n);
    for (dofs, b, p) in &s.cells {
        for (x, w) in triangle_rule(*p, Q) {
            let g = b.grads(x);
            for (i, &di) in dofs.iter().enumerate() {
                for (j, &dj) in dofs.iter().enumerate() {
                    m[di][dj] += w * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
                }
            }
        }
    }
    m
}

/// `(grad w_j, grad v_i)` with rows in `v`, columns in `w`.
pub fn coupling(v: &DenseSpace, w: &DenseSpace) -> Dense {
    let mut m = zeros(v.n, w.n);
    for ((dv, bv, p), (dw, bw, _)) in v.cells.iter().zip(&w.cells) {
        for (x, wt) in triangle_rule(*p, Q) {
            let (gv, gw) = (bv.grads(x), bw.grads(x));
            for (i, &di) in dv.iter().enumerate() {
                for (j, &dj) in dw.iter().enumerate() {
                    m[di][dj] += wt * (gv[i][0] * gw[j][0] + gv[i][1] * gw[j][1]);
                }
            }
        }
    }
    m
}

/// Interior-penalty form from its definition: broken Hessian product,
/// symmetric gradient-jump / averaged-Hessian terms and the
/// normal-derivative jump penalty.
pub fn c0ip(s: &DenseSpace, sigma: f64) -> Dense {
    let n = s.n;
    let mut a = zeros(n, n);
    for (dofs, b, p) in &s.cells {
        let area = 0.5 * ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1])).abs();
        let h = b.hessians();
        for (i, &di) in dofs.iter().enumerate() {
            for (j, &dj) in dofs.iter().enumerate() {
                let mut f = 0.0;
                for r in 0..2 {
                    for c in 0..2 {
                        f += h[i][r][c] * h[j][r][c];
                    }
                }
                a[di][dj] += area * f;
            }
        }
    }
    // edges by brute-force scan of triangle sides
    let mut edges: Vec<(Point, Point, Vec<usize>)> = Vec::new();
    for (k, (_, _, p)) in s.cells.iter().enumerate() {
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            match edges.iter_mut().find(|e| (same(e.0, p[u]) && same(e.1, p[v])) || (same(e.0, p[v]) && same(e.1, p[u]))) {
                Some(e) => e.2.push(k),
                None => edges.push((p[u], p[v], vec![k])),
            }
        }
    }
    let g = gauss(Q);
    for (pa, pb, adj) in &edges {
        let len = ((pb[0] - pa[0]).powi(2) + (pb[1] - pa[1]).powi(2)).sqrt();
        // unit normal pointing out of the first adjacent triangle
        let mut nrm = [(pb[1] - pa[1]) / len, -(pb[0] - pa[0]) / len];
        let p0 = s.cells[adj[0]].2;
        let centroid = [(p0[0][0] + p0[1][0] + p0[2][0]) / 3.0, (p0[0][1] + p0[1][1] + p0[2][1]) / 3.0];
        if (pa[0] - centroid[0]) * nrm[0] + (pa[1] - centroid[1]) * nrm[1] < 0.0 {
            nrm = [-nrm[0], -nrm[1]];
        }
        // gradient jump, its normal part, and the averaged Hessian times n
        let mut jump = vec![[0.0; 2]; n];
        let mut jump_n = vec![0.0; n];
        let mut avg = vec![[0.0; 2]; n];
        let weight = 1.0 / adj.len() as f64;
        for &(t, w) in &g {
            let x = [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])];
            jump.iter_mut().for_each(|v| *v = [0.0; 2]);
            avg.iter_mut().for_each(|v| *v = [0.0; 2]);
            for (side, &k) in adj.iter().enumerate() {
                let sign = if side == 0 { 1.0 } else { -1.0 };
                let (dofs, b, _) = &s.cells[k];
                let (gr, h) = (b.grads(x), b.hessians());
                for (i, &d) in dofs.iter().enumerate() {
                    for r in 0..2 {
                        jump[d][r] += sign * gr[i][r];
                        avg[d][r] += weight * (h[i][r][0] * nrm[0] + h[i][r][1] * nrm[1]);
                    }
                }
            }
            for d in 0..n {
                jump_n[d] = jump[d][0] * nrm[0] + jump[d][1] * nrm[1];
            }
            let dot = |a: [f64; 2], b: [f64; 2]| a[0] * b[0] + a[1] * b[1];
            let wl = w * len;
            for i in 0..n {
                if jump[i] == [0.0; 2] && avg[i] == [0.0; 2] {
                    continue;
                }
                for j in 0..n {
                    a[i][j] += wl * (-(dot(jump[i], avg[j]) + dot(jump[j], avg[i])) + sigma / len * jump_n[i] * jump_n[j]);
                }
            }
        }
    }
    a
}

/// `(data, phi_i)` for every basis function.
pub fn load(s: &DenseSpace, data: impl Fn(Point) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; s.n];
    for (dofs, b, p) in &s.cells {
        for (x, w) in triangle_rule(*p, Q) {
            let f = data(x);
            for (v, &d) in b.values(x).iter().zip(dofs) {
                out[d] += w * f * v;
            }
        }
    }
    out
}

/// `(field, grad phi_i)` for every basis function.
pub fn grad_load(s: &DenseSpace, field: impl Fn(Point) -> [f64; 2]) -> Vec<f64> {
    let mut out = vec![0.0; s.n];
    for (dofs, b, p) in &s.cells {
        for (x, w) in triangle_rule(*p, Q) {
            let f = field(x);
            for (g, &d) in b.grads(x).iter().zip(dofs) {
                out[d] += w * (f[0] * g[0] + f[1] * g[1]);
            }
        }
    }
    out
}

/// Full-DOF vectors of one time level.
#[derive(Clone, Debug)]
pub struct FullLevel {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub p: Vec<f64>,
}

/// Dense operators of the scheme on one mesh.
pub struct SchemeOracle {
    pub v: DenseSpace,
    pub w: DenseSpace,
    pub m: Dense,
    pub k: Dense,
    pub a: Dense,
    pub b: Dense,
    pub mw: Dense,
    pub kw: Dense,
    /// free DOF masks
    pub free_v: Vec<bool>,
    pub free_w: Vec<bool>,
}

fn on_unit_square_boundary(x: Point) -> bool {
    x[0].abs() < 1e-13 || x[1].abs() < 1e-13 || (x[0] - 1.0).abs() < 1e-13 || (x[1] - 1.0).abs() < 1e-13
}

impl SchemeOracle {
    /// Unit-square meshes only (boundary detected geometrically).
    pub fn new(mesh: &TriMesh, lib_v: &FeSpace, lib_w: &FeSpace, sigma: f64) -> Self {
        let v = DenseSpace::new(mesh, lib_v, 2);
        let w = DenseSpace::new(mesh, lib_w, 1);
        let free_v = v.coords.iter().map(|&x| !on_unit_square_boundary(x)).collect();
        let free_w = w.coords.iter().map(|&x| !on_unit_square_boundary(x)).collect();
        Self {
            m: mass(&v),
            k: stiffness(&v),
            a: c0ip(&v, sigma),
            b: coupling(&v, &w),
            mw: mass(&w),
            kw: stiffness(&w),
            v,
            w,
            free_v,
            free_w,
        }
    }

    fn loads(&self, data: &dyn ProblemData, t: f64) -> [Vec<f64>; 3] {
        [load(&self.v, |x| data.f(t, x)), load(&self.w, |x| data.phi(t, x)), load(&self.w, |x| data.g(t, x))]
    }

    /// Residuals of the temperature and potential equations between two
    /// levels, with their term scales.
    fn parabolic(
        &self,
        c: &ModelCoefficients,
        dt: f64,
        now: &FullLevel,
        next: &FullLevel,
        l_now: &[Vec<f64>; 3],
        l_next: &[Vec<f64>; 3],
    ) -> Vec<(f64, f64)> {
        let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) / dt).collect::<Vec<_>>();
        let h = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect::<Vec<_>>();
        let bt = transpose(&self.b);
        let (dth, dp, du) = (d(&next.theta, &now.theta), d(&next.p, &now.p), d(&next.u, &now.u));
        let (hth, hp) = (h(&next.theta, &now.theta), h(&next.p, &now.p));
        let mut out = Vec::new();
        for row in 0..2 {
            let terms: Vec<Vec<f64>> = if row == 0 {
                vec![
                    mat_vec(&self.mw, &dth).iter().map(|x| c.a1 * x).collect(),
                    mat_vec(&self.mw, &dp).iter().map(|x| -c.gamma * x).collect(),
                    mat_vec(&self.mw, &hth).iter().map(|x| c.b1 * x).collect(),
                    mat_vec(&self.kw, &hth).iter().map(|x| c.c1 * x).collect(),
                    mat_vec(&bt, &du).iter().map(|x| c.alpha * x).collect(),
                    h(&l_next[1], &l_now[1]).iter().map(|x| -x).collect(),
                ]
            } else {
                vec![
                    mat_vec(&self.mw, &dp).iter().map(|x| c.a2 * x).collect(),
                    mat_vec(&self.mw, &dth).iter().map(|x| -c.gamma * x).collect(),
                    mat_vec(&self.kw, &hp).iter().map(|x| c.kappa * x).collect(),
                    mat_vec(&bt, &du).iter().map(|x| c.beta * x).collect(),
                    h(&l_next[2], &l_now[2]).iter().map(|x| -x).collect(),
                ]
            };
            for i in 0..self.w.n {
                if self.free_w[i] {
                    out.push(row_residual(&terms, i));
                }
            }
        }
        out
    }

    /// Worst relative residual of the first-step equations tested with every
    /// free basis function.
    pub fn first_step_residual(&self, data: &dyn ProblemData, dt: f64, l0: &FullLevel, l1: &FullLevel) -> f64 {
        let c = data.coefficients();
        let (ld0, ld1) = (self.loads(data, 0.0), self.loads(data, dt));
        let vel = load(&self.v, |x| data.initial_velocity(x));
        let vel_g = grad_load(&self.v, |x| data.initial_velocity_grad(x));
        let du: Vec<f64> = l1.u.iter().zip(&l0.u).map(|(a, b)| (a - b) / dt).collect();
        let half = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect::<Vec<_>>();
        let terms = vec![
            mat_vec(&self.m, &du).iter().zip(&vel).map(|(x, v)| 2.0 / dt * (x - v)).collect::<Vec<_>>(),
            mat_vec(&self.k, &du).iter().zip(&vel_g).map(|(x, v)| 2.0 / dt * c.a0 * (x - v)).collect(),
            mat_vec(&self.a, &half(&l1.u, &l0.u)).iter().map(|x| c.d0 * x).collect(),
            mat_vec(&self.b, &half(&l1.theta, &l0.theta)).iter().map(|x| -c.alpha * x).collect(),
            mat_vec(&self.b, &half(&l1.p, &l0.p)).iter().map(|x| -c.beta * x).collect(),
            half(&ld1[0], &ld0[0]).iter().map(|x| -x).collect(),
        ];
        let mut all: Vec<(f64, f64)> = (0..self.v.n).filter(|&i| self.free_v[i]).map(|i| row_residual(&terms, i)).collect();
        all.extend(self.parabolic(c, dt, l0, l1, &ld0, &ld1));
        worst(&all)
    }

    /// Same for the main step producing level `n + 1` from `n - 1`, `n`.
    pub fn main_step_residual(
        &self,
        data: &dyn ProblemData,
        dt: f64,
        n: usize,
        prev: &FullLevel,
        now: &FullLevel,
        next: &FullLevel,
    ) -> f64 {
        let c = data.coefficients();
        let t = |k: usize| k as f64 * dt;
        let (lp, ln, lx) = (self.loads(data, t(n - 1)), self.loads(data, t(n)), self.loads(data, t(n + 1)));
        let second: Vec<f64> = (0..self.v.n).map(|i| (next.u[i] - 2.0 * now.u[i] + prev.u[i]) / (dt * dt)).collect();
        let quarter = |a: &[f64], b: &[f64], cc: &[f64]| (0..a.len()).map(|i| 0.25 * (a[i] + 2.0 * b[i] + cc[i])).collect::<Vec<_>>();
        let terms = vec![
            mat_vec(&self.m, &second),
            mat_vec(&self.k, &second).iter().map(|x| c.a0 * x).collect(),
            mat_vec(&self.a, &quarter(&next.u, &now.u, &prev.u)).iter().map(|x| c.d0 * x).collect(),
            mat_vec(&self.b, &quarter(&next.theta, &now.theta, &prev.theta)).iter().map(|x| -c.alpha * x).collect(),
            mat_vec(&self.b, &quarter(&next.p, &now.p, &prev.p)).iter().map(|x| -c.beta * x).collect(),
            quarter(&lx[0], &ln[0], &lp[0]).iter().map(|x| -x).collect(),
        ];
        let mut all: Vec<(f64, f64)> = (0..self.v.n).filter(|&i| self.free_v[i]).map(|i| row_residual(&terms, i)).collect();
        all.extend(self.parabolic(c, dt, now, next, &ln, &lx));
        worst(&all)
    }
}

fn row_residual(terms: &[Vec<f64>], i: usize) -> (f64, f64) {
    let r: f64 = terms.iter().map(|t| t[i]).sum();
    let scale = terms.iter().map(|t| t[i].abs()).fold(0.0, f64::max);
    (r, scale)
}

/// Largest residual relative to the largest term in any equation.
fn worst(rows: &[(f64, f64)]) -> f64 {
    let scale = rows.iter().map(|r| r.1).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    rows.iter().map(|r| r.0.abs()).fold(0.0, f64::max) / scale
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max)
}

pub fn max_abs(a: &Dense) -> f64 {
    a.iter().flatten().fold(0.0, |m: f64, &x| m.max(x.abs()))
}
