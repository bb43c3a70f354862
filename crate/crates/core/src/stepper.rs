//! Time marching: initial projections, the special first step, the
//! Newmark (deflection) / Crank-Nicolson (temperature, potential) main loop,
//! and the discrete energy.

use std::sync::Arc;

use crate::assembly::{
    c0ip_matrix_terms, coupling_matrix, gradient_load_vector, h1_matrix, load_vector, mass_matrix,
    C0ipTerms,
};
use crate::error::{Error, Result};
use crate::fem::{FeSpace, SpaceKind};
use crate::linsolve::{factor, BlockSystem, BlockTerm, SolverKind};
use crate::mesh::TriMesh;
use crate::mms::ProblemData;
use crate::model::{gamma0_interval, ModelCoefficients};
use crate::sparse::{SparseMatrix, TripletBuilder};

/// Quadrature degree for load vectors and initial-data projections.
pub const DATA_QUAD_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_final: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, steps: usize) -> Result<Self> {
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidArgument(format!("final time must be positive, got {t_final}")));
        }
        if steps < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 time steps, got {steps}")));
        }
        Ok(Self { t_final, steps })
    }

    /// Grid with step closest to `dt` that divides `t_final` evenly.
    pub fn with_step(t_final: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
        }
        Self::new(t_final, (t_final / dt).round().max(1.0) as usize)
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.steps as f64
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.dt()
    }
}

/// Spaces and all operators restricted to the free DOFs.
#[derive(Debug)]
pub struct Operators {
    pub v: FeSpace,
    pub w: FeSpace,
    pub sigma_ip: f64,
    /// P2 mass
    pub mass_v: SparseMatrix,
    /// P2 stiffness
    pub stiff_v: SparseMatrix,
    /// interior penalty form
    pub c0ip: SparseMatrix,
    /// volume + penalty parts only: the broken norm's Gram matrix
    pub broken: SparseMatrix,
    /// `(grad chi_j, grad v_i)`, V rows, W columns
    pub coupling: SparseMatrix,
    pub coupling_t: SparseMatrix,
    /// P1 mass
    pub mass_w: SparseMatrix,
    /// P1 stiffness
    pub stiff_w: SparseMatrix,
}

impl Operators {
    pub fn new(mesh: Arc<TriMesh>, sigma_ip: f64) -> Result<Self> {
        let v = FeSpace::new(mesh.clone(), SpaceKind::P2);
        let w = FeSpace::new(mesh, SpaceKind::P1);
        let rv = |m: &SparseMatrix| m.restrict(&v.free_index, v.n_free(), &v.free_index, v.n_free());
        let rw = |m: &SparseMatrix| m.restrict(&w.free_index, w.n_free(), &w.free_index, w.n_free());
        let mass_v = rv(&mass_matrix(&v));
        let stiff_v = rv(&h1_matrix(&v));
        let c0ip = rv(&c0ip_matrix_terms(&v, sigma_ip, C0ipTerms::ALL)?);
        let broken = rv(&c0ip_matrix_terms(&v, sigma_ip, C0ipTerms { volume: true, consistency: false, penalty: true })?);
        let coupling = coupling_matrix(&v, &w)?.restrict(&v.free_index, v.n_free(), &w.free_index, w.n_free());
        let coupling_t = coupling.transpose();
        let mass_w = rw(&mass_matrix(&w));
        let stiff_w = rw(&h1_matrix(&w));
        Ok(Self { v, w, sigma_ip, mass_v, stiff_v, c0ip, broken, coupling, coupling_t, mass_w, stiff_w })
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.v.n_free(), self.w.n_free(), self.w.n_free()]
    }
}

/// Free-DOF coefficient vectors at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub p: Vec<f64>,
}

impl Level {
    pub fn zeros(sizes: [usize; 3]) -> Self {
        Self { u: vec![0.0; sizes[0]], theta: vec![0.0; sizes[1]], p: vec![0.0; sizes[2]] }
    }

    fn check_finite(&self, step: usize) -> Result<()> {
        for (field, v) in [("U", &self.u), ("Theta", &self.theta), ("P", &self.p)] {
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::NonFinite { field, step });
            }
        }
        Ok(())
    }
}

/// Load vectors (f, phi, g) at one time level.
type Loads = [Vec<f64>; 3];

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn lin2(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}

fn sum_scaled(terms: &[(&SparseMatrix, f64)]) -> SparseMatrix {
    let (r, c) = (terms[0].0.nrows(), terms[0].0.ncols());
    let mut t = TripletBuilder::new(r, c);
    for &(m, s) in terms {
        t.add_matrix(m, s, 0, 0);
    }
    t.build()
}

/// Marches one problem on one mesh; both block matrices are factored once.
pub struct Stepper<'a, D: ProblemData + ?Sized> {
    pub ops: &'a Operators,
    pub data: &'a D,
    pub grid: TimeGrid,
    coeffs: ModelCoefficients,
    /// `M + a0 K`
    inertia: SparseMatrix,
    first: BlockSystem,
    main: BlockSystem,
    loads: Vec<Option<Loads>>,
}

impl<'a, D: ProblemData + ?Sized> Stepper<'a, D> {
    pub fn new(ops: &'a Operators, data: &'a D, grid: TimeGrid, solver: SolverKind) -> Result<Self> {
        let c = *data.coefficients();
        c.check_coupling()?;
        let dt = grid.dt();
        let inertia = sum_scaled(&[(&ops.mass_v, 1.0), (&ops.stiff_v, c.a0)]);
        let (b, bt, mw, kw) = (&ops.coupling, &ops.coupling_t, &ops.mass_w, &ops.stiff_w);
        let theta_theta = sum_scaled(&[(mw, c.a1 / dt + 0.5 * c.b1), (kw, 0.5 * c.c1)]);
        let p_p = sum_scaled(&[(mw, c.a2 / dt), (kw, 0.5 * c.kappa)]);
        let build = |scale_inertia: f64, scale_a: f64, scale_couple: f64| -> Result<BlockSystem> {
            let terms = [
                BlockTerm { row: 0, col: 0, scale: scale_inertia, matrix: &inertia },
                BlockTerm { row: 0, col: 0, scale: scale_a * c.d0, matrix: &ops.c0ip },
                BlockTerm { row: 0, col: 1, scale: -scale_couple * c.alpha, matrix: b },
                BlockTerm { row: 0, col: 2, scale: -scale_couple * c.beta, matrix: b },
                BlockTerm { row: 1, col: 0, scale: c.alpha / dt, matrix: bt },
                BlockTerm { row: 1, col: 1, scale: 1.0, matrix: &theta_theta },
                BlockTerm { row: 1, col: 2, scale: -c.gamma / dt, matrix: mw },
                BlockTerm { row: 2, col: 0, scale: c.beta / dt, matrix: bt },
                BlockTerm { row: 2, col: 1, scale: -c.gamma / dt, matrix: mw },
                BlockTerm { row: 2, col: 2, scale: 1.0, matrix: &p_p },
            ];
            BlockSystem::new(ops.sizes(), &terms, solver)
        };
        let first = build(2.0 / (dt * dt), 0.5, 0.5)?;
        let main = build(1.0 / (dt * dt), 0.25, 0.25)?;
        Ok(Self { ops, data, grid, coeffs: c, inertia, first, main, loads: vec![None; grid.steps + 1] })
    }

    pub fn coefficients(&self) -> &ModelCoefficients {
        &self.coeffs
    }

    pub fn first_system(&self) -> &BlockSystem {
        &self.first
    }

    pub fn main_system(&self) -> &BlockSystem {
        &self.main
    }

    /// Free-DOF load vectors at level `n`, cached.
    pub fn loads(&mut self, n: usize) -> Result<&Loads> {
        if self.loads[n].is_none() {
            let t = self.grid.t(n);
            let d = self.data;
            let (v, w) = (&self.ops.v, &self.ops.w);
            let f = v.restrict(&load_vector(v, |t, x| d.f(t, x), t, DATA_QUAD_DEGREE)?);
            let phi = w.restrict(&load_vector(w, |t, x| d.phi(t, x), t, DATA_QUAD_DEGREE)?);
            let g = w.restrict(&load_vector(w, |t, x| d.g(t, x), t, DATA_QUAD_DEGREE)?);
            self.loads[n] = Some([f, phi, g]);
            // levels more than two steps back are never needed again
            if n >= 3 {
                self.loads[n - 3] = None;
            }
        }
        Ok(self.loads[n].as_ref().unwrap())
    }

    /// `U0` nodal interpolant; `Theta0`, `P0` H1 projections.
    pub fn project_initial(&self) -> Result<Level> {
        let ops = self.ops;
        if self.data.zero_initial_data() {
            return Ok(Level::zeros(ops.sizes()));
        }
        let d = self.data;
        let u = ops.v.restrict(&ops.v.interpolate(|x| d.initial_u(x)));
        if ops.w.n_free() == 0 {
            return Ok(Level { u, theta: vec![], p: vec![] });
        }
        let k = factor(&ops.stiff_w)?;
        let rhs_t = ops.w.restrict(&gradient_load_vector(&ops.w, |x| d.initial_theta_grad(x), DATA_QUAD_DEGREE)?);
        let rhs_p = ops.w.restrict(&gradient_load_vector(&ops.w, |x| d.initial_p_grad(x), DATA_QUAD_DEGREE)?);
        let level = Level { u, theta: k.solve(&rhs_t)?, p: k.solve(&rhs_p)? };
        level.check_finite(0)?;
        Ok(level)
    }

    /// Right-hand sides of the temperature and potential rows, shared by
    /// both block systems.
    fn parabolic_rhs(&mut self, cur: &Level, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let c = self.coeffs;
        let dt = self.grid.dt();
        let l_now = self.loads(n)?.clone();
        let ops = self.ops;
        let l_next = self.loads(n + 1)?;
        let mut rt = lin2(0.5, &l_next[1], 0.5, &l_now[1]);
        let mut rp = lin2(0.5, &l_next[2], 0.5, &l_now[2]);
        ops.mass_w.mul_vec_add(c.a1 / dt - 0.5 * c.b1, &cur.theta, &mut rt);
        ops.mass_w.mul_vec_add(-c.gamma / dt, &cur.p, &mut rt);
        ops.stiff_w.mul_vec_add(-0.5 * c.c1, &cur.theta, &mut rt);
        ops.coupling_t.mul_vec_add(c.alpha / dt, &cur.u, &mut rt);
        ops.mass_w.mul_vec_add(c.a2 / dt, &cur.p, &mut rp);
        ops.mass_w.mul_vec_add(-c.gamma / dt, &cur.theta, &mut rp);
        ops.stiff_w.mul_vec_add(-0.5 * c.kappa, &cur.p, &mut rp);
        ops.coupling_t.mul_vec_add(c.beta / dt, &cur.u, &mut rp);
        Ok((rt, rp))
    }

    /// Level 1 from level 0 and the initial velocity.
    pub fn first_step(&mut self, l0: &Level) -> Result<Level> {
        let c = self.coeffs;
        let dt = self.grid.dt();
        let ops = self.ops;
        let d = self.data;
        let l_next = self.loads(1)?.clone();
        let l_now = self.loads(0)?;
        let mut ru = lin2(0.5, &l_next[0], 0.5, &l_now[0]);
        self.inertia.mul_vec_add(2.0 / (dt * dt), &l0.u, &mut ru);
        if !d.zero_initial_data() {
            let vel = ops.v.restrict(&load_vector(&ops.v, |_, x| d.initial_velocity(x), 0.0, DATA_QUAD_DEGREE)?);
            let vel_grad =
                ops.v.restrict(&gradient_load_vector(&ops.v, |x| d.initial_velocity_grad(x), DATA_QUAD_DEGREE)?);
            axpy(&mut ru, 2.0 / dt, &vel);
            axpy(&mut ru, 2.0 / dt * c.a0, &vel_grad);
        }
        ops.c0ip.mul_vec_add(-0.5 * c.d0, &l0.u, &mut ru);
        ops.coupling.mul_vec_add(0.5 * c.alpha, &l0.theta, &mut ru);
        ops.coupling.mul_vec_add(0.5 * c.beta, &l0.p, &mut ru);
        let (rt, rp) = self.parabolic_rhs(l0, 0)?;
        let [u, theta, p] = self.first.solve([&ru, &rt, &rp])?;
        let out = Level { u, theta, p };
        out.check_finite(1)?;
        Ok(out)
    }

    /// Level `n + 1` from levels `n - 1` and `n`, for `n >= 1`.
    pub fn main_step(&mut self, prev: &Level, cur: &Level, n: usize) -> Result<Level> {
        if n == 0 || n >= self.grid.steps {
            return Err(Error::InvalidArgument(format!("main step index {n} outside 1..{}", self.grid.steps)));
        }
        let c = self.coeffs;
        let dt = self.grid.dt();
        let ops = self.ops;
        let mut ru = self.loads(n + 1)?[0].clone();
        axpy(&mut ru, 2.0, &self.loads(n)?[0].clone());
        axpy(&mut ru, 1.0, &self.loads(n - 1)?[0].clone());
        ru.iter_mut().for_each(|x| *x *= 0.25);
        let two_cur_plus_prev = |a: &[f64], b: &[f64]| lin2(2.0, a, 1.0, b);
        self.inertia.mul_vec_add(1.0 / (dt * dt), &lin2(2.0, &cur.u, -1.0, &prev.u), &mut ru);
        ops.c0ip.mul_vec_add(-0.25 * c.d0, &two_cur_plus_prev(&cur.u, &prev.u), &mut ru);
        ops.coupling.mul_vec_add(0.25 * c.alpha, &two_cur_plus_prev(&cur.theta, &prev.theta), &mut ru);
        ops.coupling.mul_vec_add(0.25 * c.beta, &two_cur_plus_prev(&cur.p, &prev.p), &mut ru);
        let (rt, rp) = self.parabolic_rhs(cur, n)?;
        let [u, theta, p] = self.main.solve([&ru, &rt, &rp])?;
        let out = Level { u, theta, p };
        out.check_finite(n + 1)?;
        Ok(out)
    }

    /// Full run; `observe(n, level)` is called for `n = 0..=N` in order.
    pub fn run(&mut self, observe: impl FnMut(usize, &Level) -> Result<()>) -> Result<Level> {
        let l0 = self.project_initial()?;
        self.run_from(l0, observe)
    }

    /// Like [`Stepper::run`] but starting from a given level 0.
    pub fn run_from(&mut self, l0: Level, mut observe: impl FnMut(usize, &Level) -> Result<()>) -> Result<Level> {
        l0.check_finite(0)?;
        observe(0, &l0)?;
        let mut prev = l0.clone();
        let mut cur = self.first_step(&l0)?;
        observe(1, &cur)?;
        for n in 1..self.grid.steps {
            let next = self.main_step(&prev, &cur, n)?;
            observe(n + 1, &next)?;
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(cur)
    }
}

/// Parameters of the discrete energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWeights {
    pub gamma0: f64,
    pub c_coer: f64,
}

/// Running evaluation of the discrete energy `E_h(m)`, `m >= 1`, fed with
/// consecutive levels.
#[derive(Debug)]
pub struct EnergyTracker<'a> {
    ops: &'a Operators,
    coeffs: ModelCoefficients,
    weights: EnergyWeights,
    dt: f64,
    last: Option<Level>,
    level: usize,
    /// time-accumulated dissipation
    pub dissipation: f64,
    /// `(m, E_h(m))`
    pub history: Vec<(usize, f64)>,
    /// dissipation after each level, for monotonicity checks
    pub dissipation_history: Vec<f64>,
}

impl<'a> EnergyTracker<'a> {
    pub fn new(ops: &'a Operators, coeffs: ModelCoefficients, weights: EnergyWeights, dt: f64) -> Result<Self> {
        let (lo, hi) = gamma0_interval(&coeffs)?;
        if !(weights.gamma0 > lo && weights.gamma0 < hi) {
            return Err(Error::InvalidArgument(format!(
                "gamma0 = {} outside the admissible interval ({lo}, {hi})",
                weights.gamma0
            )));
        }
        if !(weights.c_coer > 0.0) {
            return Err(Error::InvalidArgument("coercivity constant must be positive".into()));
        }
        Ok(Self {
            ops,
            coeffs,
            weights,
            dt,
            last: None,
            level: 0,
            dissipation: 0.0,
            history: Vec::new(),
            dissipation_history: Vec::new(),
        })
    }

    /// Feed level `n`; levels must arrive in order starting at 0.
    pub fn push(&mut self, n: usize, level: &Level) {
        debug_assert_eq!(n, self.level);
        if let Some(prev) = &self.last {
            // prev = level m, level = level m + 1
            let m = n - 1;
            if m >= 1 {
                let c = &self.coeffs;
                let ops = self.ops;
                let th = lin2(0.5, &level.theta, 0.5, &prev.theta);
                let pp = lin2(0.5, &level.p, 0.5, &prev.p);
                self.dissipation += self.dt
                    * (c.b1 * ops.mass_w.bilinear(&th, &th)
                        + c.c1 * ops.stiff_w.bilinear(&th, &th)
                        + c.kappa * ops.stiff_w.bilinear(&pp, &pp));
                self.dissipation_history.push(self.dissipation);
                let e = discrete_energy(ops, c, self.weights, self.dt, prev, level, self.dissipation);
                self.history.push((m, e));
            }
        }
        self.last = Some(level.clone());
        self.level += 1;
    }
}

/// `E_h` from levels `m` and `m + 1` and the accumulated dissipation.
pub fn discrete_energy(
    ops: &Operators,
    c: &ModelCoefficients,
    w: EnergyWeights,
    dt: f64,
    lm: &Level,
    lm1: &Level,
    dissipation: f64,
) -> f64 {
    let du = lin2(1.0 / dt, &lm1.u, -1.0 / dt, &lm.u);
    let uh = lin2(0.5, &lm1.u, 0.5, &lm.u);
    let g = c.gamma.abs();
    ops.mass_v.bilinear(&du, &du)
        + c.a0 * ops.stiff_v.bilinear(&du, &du)
        + c.d0 * w.c_coer * ops.broken.bilinear(&uh, &uh)
        + (c.a1 - g / w.gamma0) * ops.mass_w.bilinear(&lm1.theta, &lm1.theta)
        + (c.a2 - g * w.gamma0) * ops.mass_w.bilinear(&lm1.p, &lm1.p)
        + dissipation
}

/// `||dU||_M^2 + a0 ||grad dU||^2 + d0 a_h(U_half, U_half)` between two
/// deflection levels; conserved by the undamped, uncoupled scheme.
pub fn newmark_energy(ops: &Operators, c: &ModelCoefficients, dt: f64, u_m: &[f64], u_m1: &[f64]) -> f64 {
    let du = lin2(1.0 / dt, u_m1, -1.0 / dt, u_m);
    let uh = lin2(0.5, u_m1, 0.5, u_m);
    ops.mass_v.bilinear(&du, &du) + c.a0 * ops.stiff_v.bilinear(&du, &du) + c.d0 * ops.c0ip.bilinear(&uh, &uh)
}
