//! Reference bases, quadrature, affine element maps and the discrete spaces
//! `V_h` (continuous P2, zero trace) and `W_h` (continuous P1, zero trace).

pub mod basis;
pub mod quadrature;
pub mod space;

pub use basis::{eval_p1_basis, eval_p2_basis, Mat2, P1Eval, P2Eval, Vec2};
pub use quadrature::{edge_quadrature, gauss_legendre, tri_quadrature, QuadRule};
pub use space::{FeSpace, SpaceKind};

use crate::mesh::Point;

/// Affine map `x = x0 + J xi` from the reference triangle onto a mesh cell.
#[derive(Debug, Clone, Copy)]
pub struct ElementMap {
    pub origin: Point,
    pub jac: Mat2,
    pub inv: Mat2,
    pub det: f64,
}

impl ElementMap {
    pub fn new(p: [Point; 3]) -> Self {
        let jac = [[p[1][0] - p[0][0], p[2][0] - p[0][0]], [p[1][1] - p[0][1], p[2][1] - p[0][1]]];
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let inv = [[jac[1][1] / det, -jac[0][1] / det], [-jac[1][0] / det, jac[0][0] / det]];
        Self { origin: p[0], jac, inv, det }
    }

    pub fn area(&self) -> f64 {
        0.5 * self.det.abs()
    }

    pub fn to_physical(&self, l: [f64; 3]) -> Point {
        let (x, y) = (l[1], l[2]);
        [
            self.origin[0] + self.jac[0][0] * x + self.jac[0][1] * y,
            self.origin[1] + self.jac[1][0] * x + self.jac[1][1] * y,
        ]
    }

    pub fn to_barycentric(&self, p: Point) -> [f64; 3] {
        let d = [p[0] - self.origin[0], p[1] - self.origin[1]];
        let x = self.inv[0][0] * d[0] + self.inv[0][1] * d[1];
        let y = self.inv[1][0] * d[0] + self.inv[1][1] * d[1];
        [1.0 - x - y, x, y]
    }

    /// Physical gradient `J^{-T} g`.
    pub fn grad(&self, g: Vec2) -> Vec2 {
        [
            self.inv[0][0] * g[0] + self.inv[1][0] * g[1],
            self.inv[0][1] * g[0] + self.inv[1][1] * g[1],
        ]
    }

    /// Physical Hessian `J^{-T} H J^{-1}`.
    pub fn hessian(&self, h: Mat2) -> Mat2 {
        let g = self.inv;
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        s += g[a][i] * h[a][b] * g[b][j];
                    }
                }
                out[i][j] = s;
            }
        }
        out
    }
}

pub(crate) fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn mat_vec(m: Mat2, v: Vec2) -> Vec2 {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

pub(crate) fn frobenius(a: Mat2, b: Mat2) -> f64 {
    a[0][0] * b[0][0] + a[0][1] * b[0][1] + a[1][0] * b[1][0] + a[1][1] * b[1][1]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Chain rule check: derivatives of v(F^{-1}(x)) by finite differences
    /// of the mapped function agree with the mapped reference derivatives.
    #[test]
    fn mapped_derivatives_match_finite_differences() {
        let map = ElementMap::new([[0.3, 0.1], [1.1, 0.4], [0.2, 0.9]]);
        let l = [0.2, 0.5, 0.3];
        let x = map.to_physical(l);
        // central differences are exact on quadratics up to rounding
        let eps = 1e-3;
        for j in 0..6 {
            let f = |p: Point| eval_p2_basis(map.to_barycentric(p)).values[j];
            let e = eval_p2_basis(l);
            let g = map.grad(e.grads[j]);
            let h = map.hessian(e.hessians[j]);
            let fd_gx = (f([x[0] + eps, x[1]]) - f([x[0] - eps, x[1]])) / (2.0 * eps);
            let fd_gy = (f([x[0], x[1] + eps]) - f([x[0], x[1] - eps])) / (2.0 * eps);
            let fd_hxx = (f([x[0] + eps, x[1]]) - 2.0 * f(x) + f([x[0] - eps, x[1]])) / (eps * eps);
            let fd_hxy = (f([x[0] + eps, x[1] + eps]) - f([x[0] + eps, x[1] - eps]) - f([x[0] - eps, x[1] + eps])
                + f([x[0] - eps, x[1] - eps]))
                / (4.0 * eps * eps);
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
            assert!(rel(fd_gx, g[0]) < 1e-6 && rel(fd_gy, g[1]) < 1e-6);
            assert!(rel(fd_hxx, h[0][0]) < 1e-6 && rel(fd_hxy, h[0][1]) < 1e-6);
        }
    }

    #[test]
    fn barycentric_roundtrip() {
        let map = ElementMap::new([[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]]);
        let l = map.to_barycentric(map.to_physical([0.1, 0.6, 0.3]));
        assert!((l[0] - 0.1).abs() < 1e-15 && (l[1] - 0.6).abs() < 1e-15);
        assert!((map.area() - 1.0).abs() < 1e-15);
    }
}
