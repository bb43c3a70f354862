use std::f64::consts::PI;

use super::lshape_generated::{deflection_profile, moment_profile};
use super::{ExactSolution, ProblemData};
use crate::error::{Error, Result};
use crate::fem::{Mat2, Vec2};
use crate::mesh::Point;
use crate::model::ModelCoefficients;

pub use super::lshape_generated::UPSILON;

/// Radius of the ball around the reentrant corner where derivatives are not
/// evaluated.
pub const EXCLUSION_RADIUS: f64 = 1e-6;

/// Corner-singular solution on `[-1,1]^2 \ [-1,0]^2`:
/// `u = t^2 w`, `theta = p = 2t s`, where `w` carries the clamped-plate
/// corner function `r^{1+upsilon} G` and `s` the Laplace corner function
/// `r^{2/3} sin(2/3 (phi + pi/2))`, both cut off by `(x^2-1)(y^2-1)` factors.
#[derive(Debug, Clone)]
pub struct LShapeCase {
    coeffs: ModelCoefficients,
}

/// Derivatives of the spatial profiles at one point.
#[derive(Debug, Clone, Copy)]
pub struct CornerFields {
    /// `[w, w_x, w_y, w_xx, w_xy, w_yy, bilaplacian w]`
    pub deflection: [f64; 7],
    /// `[s, s_x, s_y, laplacian s]`
    pub moment: [f64; 4],
}

/// Polar angle measured so that the domain is `phi in [-pi/2, pi]`.
pub fn corner_angle(x: Point) -> f64 {
    let phi = x[1].atan2(x[0]);
    if phi < -0.5 * PI {
        phi + 2.0 * PI
    } else {
        phi
    }
}

impl LShapeCase {
    pub fn new(gamma: f64) -> Self {
        Self { coeffs: ModelCoefficients::smooth_study(gamma) }
    }

    pub fn with_coefficients(coeffs: ModelCoefficients) -> Self {
        Self { coeffs }
    }

    /// Profiles at `x`; fails inside the exclusion ball.
    pub fn try_fields(&self, x: Point) -> Result<CornerFields> {
        let r = x[0].hypot(x[1]);
        if r < EXCLUSION_RADIUS {
            return Err(Error::ExcludedPoint(x[0], x[1]));
        }
        Ok(self.fields(x))
    }

    fn fields(&self, x: Point) -> CornerFields {
        let r = x[0].hypot(x[1]);
        let phi = corner_angle(x);
        CornerFields { deflection: deflection_profile(x[0], x[1], r, phi), moment: moment_profile(x[0], x[1], r, phi) }
    }

    /// Value of `w` alone; finite at the corner.
    fn w(&self, x: Point) -> f64 {
        if x[0] == 0.0 && x[1] == 0.0 {
            return 0.0;
        }
        self.fields(x).deflection[0]
    }

    fn s(&self, x: Point) -> f64 {
        if x[0] == 0.0 && x[1] == 0.0 {
            return 0.0;
        }
        self.fields(x).moment[0]
    }
}

impl ProblemData for LShapeCase {
    fn coefficients(&self) -> &ModelCoefficients {
        &self.coeffs
    }

    fn f(&self, t: f64, x: Point) -> f64 {
        let c = &self.coeffs;
        let CornerFields { deflection: w, moment: s } = self.fields(x);
        2.0 * w[0] - 2.0 * c.a0 * (w[3] + w[5]) + t * t * c.d0 * w[6] + 2.0 * t * (c.alpha + c.beta) * s[3]
    }

    fn phi(&self, t: f64, x: Point) -> f64 {
        let c = &self.coeffs;
        let CornerFields { deflection: w, moment: s } = self.fields(x);
        2.0 * (c.a1 - c.gamma) * s[0] + 2.0 * t * c.b1 * s[0] - 2.0 * t * c.c1 * s[3] - 2.0 * t * c.alpha * (w[3] + w[5])
    }

    fn g(&self, t: f64, x: Point) -> f64 {
        let c = &self.coeffs;
        let CornerFields { deflection: w, moment: s } = self.fields(x);
        2.0 * (c.a2 - c.gamma) * s[0] - 2.0 * t * c.kappa * s[3] - 2.0 * t * c.beta * (w[3] + w[5])
    }

    fn initial_u(&self, _x: Point) -> f64 {
        0.0
    }

    fn initial_velocity(&self, _x: Point) -> f64 {
        0.0
    }

    fn initial_velocity_grad(&self, _x: Point) -> Vec2 {
        [0.0; 2]
    }

    fn initial_theta_grad(&self, _x: Point) -> Vec2 {
        [0.0; 2]
    }

    fn initial_p_grad(&self, _x: Point) -> Vec2 {
        [0.0; 2]
    }

    fn zero_initial_data(&self) -> bool {
        true
    }
}

impl ExactSolution for LShapeCase {
    fn u(&self, t: f64, x: Point) -> f64 {
        t * t * self.w(x)
    }

    fn u_grad(&self, t: f64, x: Point) -> Vec2 {
        let w = self.fields(x).deflection;
        [t * t * w[1], t * t * w[2]]
    }

    fn u_hess(&self, t: f64, x: Point) -> Mat2 {
        let w = self.fields(x).deflection;
        let s = t * t;
        [[s * w[3], s * w[4]], [s * w[4], s * w[5]]]
    }

    fn u_t(&self, t: f64, x: Point) -> f64 {
        2.0 * t * self.w(x)
    }

    fn u_t_grad(&self, t: f64, x: Point) -> Vec2 {
        let w = self.fields(x).deflection;
        [2.0 * t * w[1], 2.0 * t * w[2]]
    }

    fn theta(&self, t: f64, x: Point) -> f64 {
        2.0 * t * self.s(x)
    }

    fn theta_grad(&self, t: f64, x: Point) -> Vec2 {
        let s = self.fields(x).moment;
        [2.0 * t * s[1], 2.0 * t * s[2]]
    }

    fn p(&self, t: f64, x: Point) -> f64 {
        self.theta(t, x)
    }

    fn p_grad(&self, t: f64, x: Point) -> Vec2 {
        self.theta_grad(t, x)
    }

    fn excluded(&self, x: Point) -> bool {
        x[0].hypot(x[1]) < EXCLUSION_RADIUS
    }
}
