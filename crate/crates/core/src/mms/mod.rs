//! Manufactured solutions with their forcing terms, and the physical loads
//! of the thin-plate comparison runs.

mod example1;
mod lshape;
#[rustfmt::skip]
mod lshape_generated;
mod smooth;

pub use example1::{example1_loads, PlateLoads};
pub use lshape::{LShapeCase, EXCLUSION_RADIUS, UPSILON};
pub use smooth::SmoothCase;

use crate::fem::{Mat2, Vec2};
use crate::mesh::{Domain, Point};
use crate::model::ModelCoefficients;

/// Everything the time stepper needs: coefficients, loads and initial data.
pub trait ProblemData: Sync {
    fn coefficients(&self) -> &ModelCoefficients;
    /// Load of the deflection equation.
    fn f(&self, t: f64, x: Point) -> f64;
    /// Source of the temperature equation.
    fn phi(&self, t: f64, x: Point) -> f64;
    /// Source of the potential / pressure equation.
    fn g(&self, t: f64, x: Point) -> f64;
    fn initial_u(&self, x: Point) -> f64;
    fn initial_velocity(&self, x: Point) -> f64;
    fn initial_velocity_grad(&self, x: Point) -> Vec2;
    fn initial_theta_grad(&self, x: Point) -> Vec2;
    fn initial_p_grad(&self, x: Point) -> Vec2;
    /// True when all initial data vanish identically.
    fn zero_initial_data(&self) -> bool {
        false
    }
}

/// Exact fields of a manufactured solution.
pub trait ExactSolution: Sync {
    fn u(&self, t: f64, x: Point) -> f64;
    fn u_grad(&self, t: f64, x: Point) -> Vec2;
    fn u_hess(&self, t: f64, x: Point) -> Mat2;
    fn u_t(&self, t: f64, x: Point) -> f64;
    fn u_t_grad(&self, t: f64, x: Point) -> Vec2;
    fn theta(&self, t: f64, x: Point) -> f64;
    fn theta_grad(&self, t: f64, x: Point) -> Vec2;
    fn p(&self, t: f64, x: Point) -> f64;
    fn p_grad(&self, t: f64, x: Point) -> Vec2;
    /// Points where derivatives are not evaluated (singular corner).
    fn excluded(&self, _x: Point) -> bool {
        false
    }
}

/// The two manufactured studies.
#[derive(Debug, Clone)]
pub enum ManufacturedCase {
    Smooth(SmoothCase),
    LShape(LShapeCase),
}

impl ManufacturedCase {
    pub fn domain(&self) -> Domain {
        match self {
            ManufacturedCase::Smooth(_) => Domain::UnitSquare,
            ManufacturedCase::LShape(_) => Domain::LShape,
        }
    }

    pub fn final_time(&self) -> f64 {
        1.0
    }
}

macro_rules! delegate {
    ($self:ident, $c:ident => $e:expr) => {
        match $self {
            ManufacturedCase::Smooth($c) => $e,
            ManufacturedCase::LShape($c) => $e,
        }
    };
}

impl ProblemData for ManufacturedCase {
    fn coefficients(&self) -> &ModelCoefficients {
        delegate!(self, c => c.coefficients())
    }
    fn f(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.f(t, x))
    }
    fn phi(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.phi(t, x))
    }
    fn g(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.g(t, x))
    }
    fn initial_u(&self, x: Point) -> f64 {
        delegate!(self, c => c.initial_u(x))
    }
    fn initial_velocity(&self, x: Point) -> f64 {
        delegate!(self, c => c.initial_velocity(x))
    }
    fn initial_velocity_grad(&self, x: Point) -> Vec2 {
        delegate!(self, c => c.initial_velocity_grad(x))
    }
    fn initial_theta_grad(&self, x: Point) -> Vec2 {
        delegate!(self, c => c.initial_theta_grad(x))
    }
    fn initial_p_grad(&self, x: Point) -> Vec2 {
        delegate!(self, c => c.initial_p_grad(x))
    }
    fn zero_initial_data(&self) -> bool {
        delegate!(self, c => c.zero_initial_data())
    }
}

impl ExactSolution for ManufacturedCase {
    fn u(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.u(t, x))
    }
    fn u_grad(&self, t: f64, x: Point) -> Vec2 {
        delegate!(self, c => c.u_grad(t, x))
    }
    fn u_hess(&self, t: f64, x: Point) -> Mat2 {
        delegate!(self, c => c.u_hess(t, x))
    }
    fn u_t(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.u_t(t, x))
    }
    fn u_t_grad(&self, t: f64, x: Point) -> Vec2 {
        delegate!(self, c => c.u_t_grad(t, x))
    }
    fn theta(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.theta(t, x))
    }
    fn theta_grad(&self, t: f64, x: Point) -> Vec2 {
        delegate!(self, c => c.theta_grad(t, x))
    }
    fn p(&self, t: f64, x: Point) -> f64 {
        delegate!(self, c => c.p(t, x))
    }
    fn p_grad(&self, t: f64, x: Point) -> Vec2 {
        delegate!(self, c => c.p_grad(t, x))
    }
    fn excluded(&self, x: Point) -> bool {
        delegate!(self, c => c.excluded(x))
    }
}
