use std::f64::consts::PI;

use super::{ExactSolution, ProblemData};
use crate::fem::{Mat2, Vec2};
use crate::mesh::Point;
use crate::model::ModelCoefficients;

/// `u = e^{5t} (x(x-1) y(y-1))^2`, `theta = e^{-t} S`, `p = cos(t) S` with
/// `S = sin(pi x) sin(pi y)` on the unit square.
#[derive(Debug, Clone)]
pub struct SmoothCase {
    coeffs: ModelCoefficients,
}

/// `w(s) = (s(s-1))^2` and its derivatives up to order four.
fn bump(s: f64) -> [f64; 5] {
    let s2 = s * s;
    [s2 * s2 - 2.0 * s2 * s + s2, 4.0 * s2 * s - 6.0 * s2 + 2.0 * s, 12.0 * s2 - 12.0 * s + 2.0, 24.0 * s - 12.0, 24.0]
}

fn wave(x: Point) -> (f64, Vec2) {
    let (sx, cx) = (PI * x[0]).sin_cos();
    let (sy, cy) = (PI * x[1]).sin_cos();
    (sx * sy, [PI * cx * sy, PI * sx * cy])
}

impl SmoothCase {
    pub fn new(gamma: f64) -> Self {
        Self { coeffs: ModelCoefficients::smooth_study(gamma) }
    }

    pub fn with_coefficients(coeffs: ModelCoefficients) -> Self {
        Self { coeffs }
    }

    fn profile(x: Point) -> (f64, Vec2, Mat2, f64, f64) {
        let (a, b) = (bump(x[0]), bump(x[1]));
        let w = a[0] * b[0];
        let grad = [a[1] * b[0], a[0] * b[1]];
        let hess = [[a[2] * b[0], a[1] * b[1]], [a[1] * b[1], a[0] * b[2]]];
        let lap = a[2] * b[0] + a[0] * b[2];
        let bilap = a[4] * b[0] + 2.0 * a[2] * b[2] + a[0] * b[4];
        (w, grad, hess, lap, bilap)
    }

    fn lap_u(&self, t: f64, x: Point) -> f64 {
        (5.0 * t).exp() * Self::profile(x).3
    }
}

impl ProblemData for SmoothCase {
    fn coefficients(&self) -> &ModelCoefficients {
        &self.coeffs
    }

    fn f(&self, t: f64, x: Point) -> f64 {
        let c = &self.coeffs;
        let (w, _, _, lap, bilap) = Self::profile(x);
        let e = (5.0 * t).exp();
        let lap_s = -2.0 * PI * PI * wave(x).0;
        e * (25.0 * w - 25.0 * c.a0 * lap + c.d0 * bilap) + (c.alpha * (-t).exp() + c.beta * t.cos()) * lap_s
    }

    fn phi(&self, t: f64, x: Point) -> f64 {
        let c = &self.coeffs;
        let s = wave(x).0;
        let th = (-t).exp() * s;
        -c.a1 * th + c.gamma * t.sin() * s + c.b1 * th + 2.0 * PI * PI * c.c1 * th - 5.0 * c.alpha * self.lap_u(t, x)
    }

    fn g(&self, t: f64, x: Point) -> f64 {
        let c = &self.coeffs;
        let s = wave(x).0;
        -c.a2 * t.sin() * s + c.gamma * (-t).exp() * s + 2.0 * PI * PI * c.kappa * t.cos() * s
            - 5.0 * c.beta * self.lap_u(t, x)
    }

    fn initial_u(&self, x: Point) -> f64 {
        self.u(0.0, x)
    }

    fn initial_velocity(&self, x: Point) -> f64 {
        self.u_t(0.0, x)
    }

    fn initial_velocity_grad(&self, x: Point) -> Vec2 {
        self.u_t_grad(0.0, x)
    }

    fn initial_theta_grad(&self, x: Point) -> Vec2 {
        self.theta_grad(0.0, x)
    }

    fn initial_p_grad(&self, x: Point) -> Vec2 {
        self.p_grad(0.0, x)
    }
}

impl ExactSolution for SmoothCase {
    fn u(&self, t: f64, x: Point) -> f64 {
        (5.0 * t).exp() * Self::profile(x).0
    }

    fn u_grad(&self, t: f64, x: Point) -> Vec2 {
        let e = (5.0 * t).exp();
        let g = Self::profile(x).1;
        [e * g[0], e * g[1]]
    }

    fn u_hess(&self, t: f64, x: Point) -> Mat2 {
        let e = (5.0 * t).exp();
        let h = Self::profile(x).2;
        [[e * h[0][0], e * h[0][1]], [e * h[1][0], e * h[1][1]]]
    }

    fn u_t(&self, t: f64, x: Point) -> f64 {
        5.0 * self.u(t, x)
    }

    fn u_t_grad(&self, t: f64, x: Point) -> Vec2 {
        let g = self.u_grad(t, x);
        [5.0 * g[0], 5.0 * g[1]]
    }

    fn theta(&self, t: f64, x: Point) -> f64 {
        (-t).exp() * wave(x).0
    }

    fn theta_grad(&self, t: f64, x: Point) -> Vec2 {
        let e = (-t).exp();
        let g = wave(x).1;
        [e * g[0], e * g[1]]
    }

    fn p(&self, t: f64, x: Point) -> f64 {
        t.cos() * wave(x).0
    }

    fn p_grad(&self, t: f64, x: Point) -> Vec2 {
        let c = t.cos();
        let g = wave(x).1;
        [c * g[0], c * g[1]]
    }
}
