//! Oracle comparisons shared by the integration tests and the acceptance
//! binary.

use std::sync::Arc;

use plate_c0ip::assembly::{c0ip_matrix, coupling_matrix, h1_matrix, mass_matrix};
use plate_c0ip::fem::{FeSpace, SpaceKind};
use plate_c0ip::linsolve::SolverKind;
use plate_c0ip::mesh::TriMesh;
use plate_c0ip::model::ModelCoefficients;
use plate_c0ip::stepper::{Level, Operators, Stepper, TimeGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::data::{PolyData, Quadratic};
use super::{c0ip, coupling, grad_load, mass, max_abs, max_abs_diff, mat_vec, stiffness, DenseSpace, FullLevel, SchemeOracle};

/// Worst entrywise gap between library and dense matrices, per matrix,
/// relative to `max(1, largest dense entry)`.
pub fn matrix_gaps(mesh: TriMesh, sigma: f64) -> Vec<(&'static str, f64)> {
    let mesh = Arc::new(mesh);
    let v = FeSpace::new(mesh.clone(), SpaceKind::P2);
    let w = FeSpace::new(mesh.clone(), SpaceKind::P1);
    let (dv, dw) = (DenseSpace::new(&mesh, &v, 2), DenseSpace::new(&mesh, &w, 1));
    let pairs = [
        ("mass_p2", mass_matrix(&v).to_dense(), mass(&dv)),
        ("stiffness_p2", h1_matrix(&v).to_dense(), stiffness(&dv)),
        ("mass_p1", mass_matrix(&w).to_dense(), mass(&dw)),
        ("stiffness_p1", h1_matrix(&w).to_dense(), stiffness(&dw)),
        ("coupling", coupling_matrix(&v, &w).expect("same mesh").to_dense(), coupling(&dv, &dw)),
        ("c0ip", c0ip_matrix(&v, sigma).to_dense(), c0ip(&dv, sigma)),
    ];
    pairs.into_iter().map(|(name, lib, dense)| (name, max_abs_diff(&lib, &dense) / max_abs(&dense).max(1.0))).collect()
}

/// Positive coefficients with a random-sign coupling inside the admissible
/// range.
pub fn random_coefficients(seed: u64) -> ModelCoefficients {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = || rng.gen_range(0.2..3.0);
    let (a1, a2) = (pos(), pos());
    let mut c = ModelCoefficients {
        a0: pos(),
        d0: pos(),
        alpha: pos(),
        beta: pos(),
        a1,
        gamma: 0.0,
        b1: pos(),
        c1: pos(),
        a2,
        kappa: pos(),
    };
    c.gamma = 0.5 * (a1 * a2).sqrt() * if seed.is_multiple_of(2) { 1.0 } else { -1.0 };
    c
}

fn full(ops: &Operators, l: &Level) -> FullLevel {
    FullLevel { u: ops.v.extend(&l.u), theta: ops.w.extend(&l.theta), p: ops.w.extend(&l.p) }
}

/// Dense residuals of the initial projection, the first step and one main
/// step, each relative to the largest term of its equations.
#[derive(Debug, Clone, Copy)]
pub struct StepResiduals {
    pub projection: f64,
    pub first: f64,
    pub main: f64,
}

impl StepResiduals {
    pub fn worst(&self) -> f64 {
        self.projection.max(self.first).max(self.main)
    }
}

pub fn step_residuals(mesh: TriMesh, sigma: f64, seed: u64) -> StepResiduals {
    let mesh = Arc::new(mesh);
    let ops = Operators::new(mesh.clone(), sigma).expect("operators");
    let data = PolyData::random(seed, random_coefficients(seed));
    let grid = TimeGrid::new(0.3, 3).expect("grid");
    let dt = grid.dt();
    let mut stepper = Stepper::new(&ops, &data, grid, SolverKind::Direct).expect("stepper");
    let l0 = stepper.project_initial().expect("projection");
    let l1 = stepper.first_step(&l0).expect("first step");
    let l2 = stepper.main_step(&l0, &l1, 1).expect("main step");
    let oracle = SchemeOracle::new(&mesh, &ops.v, &ops.w, sigma);
    let (f0, f1, f2) = (full(&ops, &l0), full(&ops, &l1), full(&ops, &l2));

    let projection_gap = |coeffs: &[f64], q: &Quadratic| {
        let lhs = mat_vec(&oracle.kw, coeffs);
        let rhs = grad_load(&oracle.w, |x| q.grad(x));
        let scale = rhs.iter().chain(&lhs).fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        (0..oracle.w.n).filter(|&i| oracle.free_w[i]).map(|i| (lhs[i] - rhs[i]).abs() / scale).fold(0.0, f64::max)
    };
    let projection = projection_gap(&f0.theta, &data.initial[2]).max(projection_gap(&f0.p, &data.initial[3]));
    StepResiduals {
        projection,
        first: oracle.first_step_residual(&data, dt, &f0, &f1),
        main: oracle.main_step_residual(&data, dt, 1, &f0, &f1, &f2),
    }
}
