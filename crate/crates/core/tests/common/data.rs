//! Low-degree polynomial problem data with random coefficients: every
//! quadrature in play integrates it exactly.

use plate_c0ip::fem::Vec2;
use plate_c0ip::mesh::Point;
use plate_c0ip::mms::ProblemData;
use plate_c0ip::model::ModelCoefficients;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `c . [1, x, y, x^2, xy, y^2]`
#[derive(Clone, Copy, Debug)]
pub struct Quadratic([f64; 6]);

impl Quadratic {
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        Self(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
    }

    pub fn value(&self, x: Point) -> f64 {
        let c = &self.0;
        c[0] + c[1] * x[0] + c[2] * x[1] + c[3] * x[0] * x[0] + c[4] * x[0] * x[1] + c[5] * x[1] * x[1]
    }

    pub fn grad(&self, x: Point) -> Vec2 {
        let c = &self.0;
        [c[1] + 2.0 * c[3] * x[0] + c[4] * x[1], c[2] + c[4] * x[0] + 2.0 * c[5] * x[1]]
    }
}

/// Loads `q(x) (1 + t + t^2)`-type and quadratic initial data.
pub struct PolyData {
    pub coeffs: ModelCoefficients,
    pub loads: [Quadratic; 3],
    pub time: [[f64; 3]; 3],
    pub initial: [Quadratic; 4],
}

impl PolyData {
    pub fn random(seed: u64, coeffs: ModelCoefficients) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let loads = std::array::from_fn(|_| Quadratic::random(&mut rng));
        let time = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        let initial = std::array::from_fn(|_| Quadratic::random(&mut rng));
        Self { coeffs, loads, time, initial }
    }

    fn load(&self, k: usize, t: f64, x: Point) -> f64 {
        let a = self.time[k];
        self.loads[k].value(x) * (a[0] + a[1] * t + a[2] * t * t)
    }
}

impl ProblemData for PolyData {
    fn coefficients(&self) -> &ModelCoefficients {
        &self.coeffs
    }
    fn f(&self, t: f64, x: Point) -> f64 {
        self.load(0, t, x)
    }
    fn phi(&self, t: f64, x: Point) -> f64 {
        self.load(1, t, x)
    }
    fn g(&self, t: f64, x: Point) -> f64 {
        self.load(2, t, x)
    }
    fn initial_u(&self, x: Point) -> f64 {
        self.initial[0].value(x)
    }
    fn initial_velocity(&self, x: Point) -> f64 {
        self.initial[1].value(x)
    }
    fn initial_velocity_grad(&self, x: Point) -> Vec2 {
        self.initial[1].grad(x)
    }
    fn initial_theta_grad(&self, x: Point) -> Vec2 {
        self.initial[2].grad(x)
    }
    fn initial_p_grad(&self, x: Point) -> Vec2 {
        self.initial[3].grad(x)
    }
}
