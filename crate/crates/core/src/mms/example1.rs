use std::f64::consts::PI;

use super::ProblemData;
use crate::error::Result;
use crate::fem::Vec2;
use crate::mesh::Point;
use crate::model::{Material3D, ModelCoefficients};

/// Plate loads with zero initial data: `f = scale * t^2 sin(pi x) sin(pi y)`,
/// `phi = g = 0`.
///
/// The 3D heat and mass sources do not depend on the thickness coordinate, so
/// their first moments over `[-d/2, d/2]` vanish; only the transverse load
/// survives the reduction.
#[derive(Debug, Clone)]
pub struct PlateLoads {
    coeffs: ModelCoefficients,
    scale: f64,
}

impl PlateLoads {
    pub fn new(coeffs: ModelCoefficients) -> Self {
        Self { coeffs, scale: 1.0 }
    }

    /// Same coefficients, load multiplied by `scale` (0 switches it off).
    pub fn scaled(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

pub fn example1_loads(material: &Material3D, d: f64) -> Result<PlateLoads> {
    Ok(PlateLoads::new(material.coefficients(d)?))
}

impl ProblemData for PlateLoads {
    fn coefficients(&self) -> &ModelCoefficients {
        &self.coeffs
    }

    fn f(&self, t: f64, x: Point) -> f64 {
        self.scale * t * t * (PI * x[0]).sin() * (PI * x[1]).sin()
    }

    fn phi(&self, _t: f64, _x: Point) -> f64 {
        0.0
    }

    fn g(&self, _t: f64, _x: Point) -> f64 {
        0.0
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
