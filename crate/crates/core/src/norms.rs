//! Error norms against exact solutions, their accumulation over the time
//! loop, and experimental orders of convergence.

use std::fmt::Write as _;

use crate::assembly::{broken_h_norm_parts, SecondOrderField};
use crate::error::{Error, Result};
use crate::fem::{tri_quadrature, FeSpace, Mat2, Vec2};
use crate::mesh::Point;
use crate::mms::ExactSolution;
use crate::stepper::{Level, Operators, TimeGrid};

/// Triangle rule degree for error integrals.
pub const ERROR_QUAD_DEGREE: usize = 8;
/// Gauss points per edge in the penalty part of the broken norm.
pub const ERROR_EDGE_POINTS: usize = 4;

fn integrate_cells(space: &FeSpace, degree: usize, mut f: impl FnMut(usize, &crate::fem::ElementMap, [f64; 3], Point) -> f64) -> f64 {
    let q = tri_quadrature(degree).expect("supported degree");
    let mut sum = 0.0;
    for k in 0..space.mesh.n_triangles() {
        let map = space.element_map(k);
        let mut local = 0.0;
        for (l, w) in q.iter() {
            local += w * f(k, &map, *l, map.to_physical(*l));
        }
        sum += local * map.det.abs();
    }
    sum
}

/// `||exact - u_h||_{L2}` for the full coefficient vector `coeffs`.
pub fn l2_error(space: &FeSpace, coeffs: &[f64], exact: impl Fn(Point) -> f64) -> f64 {
    l2_error_with_degree(space, coeffs, exact, ERROR_QUAD_DEGREE)
}

pub fn l2_error_with_degree(space: &FeSpace, coeffs: &[f64], exact: impl Fn(Point) -> f64, degree: usize) -> f64 {
    integrate_cells(space, degree, |k, map, l, x| {
        let e = exact(x) - space.eval(coeffs, k, map, l).value;
        e * e
    })
    .sqrt()
}

/// `||grad(exact - u_h)||_{L2}`; points flagged by `skip` are left out.
pub fn h1_semi_error(
    space: &FeSpace,
    coeffs: &[f64],
    exact_grad: impl Fn(Point) -> Vec2,
    skip: impl Fn(Point) -> bool,
) -> f64 {
    h1_semi_error_with_degree(space, coeffs, exact_grad, skip, ERROR_QUAD_DEGREE)
}

pub fn h1_semi_error_with_degree(
    space: &FeSpace,
    coeffs: &[f64],
    exact_grad: impl Fn(Point) -> Vec2,
    skip: impl Fn(Point) -> bool,
    degree: usize,
) -> f64 {
    integrate_cells(space, degree, |k, map, l, x| {
        if skip(x) {
            return 0.0;
        }
        let g = space.eval(coeffs, k, map, l).grad;
        let e = exact_grad(x);
        (e[0] - g[0]).powi(2) + (e[1] - g[1]).powi(2)
    })
    .sqrt()
}

/// `||exact - u_h||_h` on the P2 space.
pub fn h_norm_error(space: &FeSpace, coeffs: &[f64], exact: &dyn SecondOrderField, sigma_ip: f64) -> Result<f64> {
    Ok(broken_h_norm_parts(space, sigma_ip, coeffs, Some(exact), ERROR_QUAD_DEGREE, ERROR_EDGE_POINTS)?.norm())
}

/// How a per-step series of norms is reduced to one number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accumulation {
    /// max over integer levels
    LinfLevels,
    /// max over half levels
    LinfHalfLevels,
    /// `sqrt(dt * sum v^2)` over half levels
    L2HalfLevels,
}

pub fn accumulate(mode: Accumulation, values: &[f64], dt: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot accumulate an empty series".into()));
    }
    Ok(match mode {
        Accumulation::LinfLevels | Accumulation::LinfHalfLevels => values.iter().fold(0.0, |a: f64, &b| a.max(b)),
        Accumulation::L2HalfLevels => (dt * values.iter().map(|v| v * v).sum::<f64>()).sqrt(),
    })
}

/// `log(e1/e0) / log(h1/h0)`; `None` when undefined.
pub fn eoc(e0: f64, h0: f64, e1: f64, h1: f64) -> Option<f64> {
    if !(e0 > 0.0 && e1 > 0.0 && h0 > 0.0 && h1 > 0.0) || h0 == h1 {
        return None;
    }
    let r = (e1 / e0).ln() / (h1 / h0).ln();
    r.is_finite().then_some(r)
}

/// Column names of the seven errors, in report order.
pub const ERROR_NAMES: [&str; 7] =
    ["e_u_linf", "grad_e_u_linf", "e_u_hnorm", "e_theta_linf", "grad_e_theta_l2", "e_p_linf", "grad_e_p_l2"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelErrors {
    pub h: f64,
    pub dt: f64,
    pub errors: [f64; 7],
}

/// Errors for a sequence of refinements, with rates between neighbours.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErrorReport {
    pub levels: Vec<LevelErrors>,
}

impl ErrorReport {
    /// Rates for each adjacent pair; entry `i` compares levels `i` and `i+1`.
    pub fn rates(&self) -> Vec<[Option<f64>; 7]> {
        self.levels
            .windows(2)
            .map(|w| std::array::from_fn(|j| eoc(w[0].errors[j], w[0].h, w[1].errors[j], w[1].h)))
            .collect()
    }

    /// Rates measured against the time step instead of the mesh size.
    pub fn time_rates(&self) -> Vec<[Option<f64>; 7]> {
        self.levels
            .windows(2)
            .map(|w| std::array::from_fn(|j| eoc(w[0].errors[j], w[0].dt, w[1].errors[j], w[1].dt)))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,dt");
        for name in ERROR_NAMES {
            write!(out, ",{name},rate").unwrap();
        }
        out.push('\n');
        let rates = self.rates();
        for (i, lvl) in self.levels.iter().enumerate() {
            write!(out, "{:.10e},{:.10e}", lvl.h, lvl.dt).unwrap();
            for j in 0..7 {
                write!(out, ",{:.10e},", lvl.errors[j]).unwrap();
                match i.checked_sub(1).map(|p| rates[p][j]) {
                    None => {}
                    Some(Some(r)) => write!(out, "{r:.4}").unwrap(),
                    Some(None) => out.push_str("nan"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Fixed-width table for terminal output.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:>9} {:>9}", "h", "dt");
        for name in ERROR_NAMES {
            write!(out, " {name:>16} {:>6}", "rate").unwrap();
        }
        out.push('\n');
        let rates = self.rates();
        for (i, lvl) in self.levels.iter().enumerate() {
            write!(out, "{:>9.4} {:>9.5}", lvl.h, lvl.dt).unwrap();
            for j in 0..7 {
                let r = match i.checked_sub(1).map(|p| rates[p][j]) {
                    Some(Some(r)) => format!("{r:.4}"),
                    Some(None) => "nan".into(),
                    None => String::new(),
                };
                write!(out, " {:>16.4e} {r:>6}", lvl.errors[j]).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Average of the exact deflection derivatives at two times.
struct HalfLevelDeflection<'a> {
    exact: &'a dyn ExactSolution,
    t0: f64,
    t1: f64,
}

impl SecondOrderField for HalfLevelDeflection<'_> {
    fn grad(&self, p: Point) -> Vec2 {
        let (a, b) = (self.exact.u_grad(self.t0, p), self.exact.u_grad(self.t1, p));
        [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
    }

    fn hess(&self, p: Point) -> Mat2 {
        let (a, b) = (self.exact.u_hess(self.t0, p), self.exact.u_hess(self.t1, p));
        [[0.5 * (a[0][0] + b[0][0]), 0.5 * (a[0][1] + b[0][1])], [0.5 * (a[1][0] + b[1][0]), 0.5 * (a[1][1] + b[1][1])]]
    }

    fn excluded(&self, p: Point) -> bool {
        self.exact.excluded(p)
    }
}

fn half(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

/// Collects per-level norms while the stepper runs.
pub struct ErrorTracker<'a> {
    ops: &'a Operators,
    exact: &'a dyn ExactSolution,
    grid: TimeGrid,
    last: Option<(Vec<f64>, Vec<f64>, Vec<f64>)>,
    /// per level: `[u, grad u, theta, p]`
    pub at_levels: Vec<[f64; 4]>,
    /// per half level: `[h-norm of u, grad theta, grad p]`
    pub at_half_levels: Vec<[f64; 3]>,
}

impl<'a> ErrorTracker<'a> {
    pub fn new(ops: &'a Operators, exact: &'a dyn ExactSolution, grid: TimeGrid) -> Self {
        Self { ops, exact, grid, last: None, at_levels: Vec::new(), at_half_levels: Vec::new() }
    }

    /// Feed level `n` (free-DOF vectors); levels must arrive in order.
    pub fn push(&mut self, n: usize, level: &Level) -> Result<()> {
        let (v, w, ex) = (&self.ops.v, &self.ops.w, self.exact);
        let t = self.grid.t(n);
        let skip = |x: Point| ex.excluded(x);
        let u = v.extend(&level.u);
        let th = w.extend(&level.theta);
        let p = w.extend(&level.p);
        self.at_levels.push([
            l2_error(v, &u, |x| ex.u(t, x)),
            h1_semi_error(v, &u, |x| ex.u_grad(t, x), skip),
            l2_error(w, &th, |x| ex.theta(t, x)),
            l2_error(w, &p, |x| ex.p(t, x)),
        ]);
        if let Some((u0, th0, p0)) = &self.last {
            let t0 = self.grid.t(n - 1);
            let avg_grad = |f: fn(&dyn ExactSolution, f64, Point) -> Vec2| {
                move |x: Point| {
                    let (a, b) = (f(ex, t0, x), f(ex, t, x));
                    [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
                }
            };
            let field = HalfLevelDeflection { exact: ex, t0, t1: t };
            self.at_half_levels.push([
                h_norm_error(v, &half(u0, &u), &field, self.ops.sigma_ip)?,
                h1_semi_error(w, &half(th0, &th), avg_grad(|e, t, x| e.theta_grad(t, x)), skip),
                h1_semi_error(w, &half(p0, &p), avg_grad(|e, t, x| e.p_grad(t, x)), skip),
            ]);
        }
        self.last = Some((u, th, p));
        Ok(())
    }

    /// The seven accumulated errors in report order.
    pub fn finish(&self) -> Result<[f64; 7]> {
        let dt = self.grid.dt();
        let lv = |j: usize| self.at_levels.iter().map(|r| r[j]).collect::<Vec<_>>();
        let hv = |j: usize| self.at_half_levels.iter().map(|r| r[j]).collect::<Vec<_>>();
        use Accumulation::*;
        Ok([
            accumulate(LinfLevels, &lv(0), dt)?,
            accumulate(LinfLevels, &lv(1), dt)?,
            accumulate(LinfHalfLevels, &hv(0), dt)?,
            accumulate(LinfLevels, &lv(2), dt)?,
            accumulate(L2HalfLevels, &hv(1), dt)?,
            accumulate(LinfLevels, &lv(3), dt)?,
            accumulate(L2HalfLevels, &hv(2), dt)?,
        ])
    }
}
