//! Experiment drivers behind the command line: convergence sweeps, the
//! plate comparison runs with cell-averaged outputs, and the energy check.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{DtPolicy, Experiment, RunConfig};
use crate::error::{Error, Result};
use crate::fem::{tri_quadrature, FeSpace};
use crate::linsolve::SolverKind;
use crate::mesh::{Domain, Point, TriMesh};
use crate::mms::{LShapeCase, ManufacturedCase, PlateLoads, ProblemData, SmoothCase};
use crate::model::{default_gamma0, ModelCoefficients};
use crate::norms::{ErrorReport, ErrorTracker, LevelErrors};
use crate::stepper::{newmark_energy, EnergyTracker, EnergyWeights, Level, Operators, Stepper, TimeGrid};

/// Mesh with `n` subdivisions per unit length.
pub fn build_mesh(domain: Domain, n: usize) -> Result<TriMesh> {
    match domain {
        Domain::UnitSquare => TriMesh::unit_square(n),
        Domain::LShape => TriMesh::lshape(n),
        Domain::Custom => Err(Error::InvalidArgument("no structured builder for a custom domain".into())),
    }
}

/// Time grid for mesh size `h` under the configured policy.
pub fn time_grid(cfg: &RunConfig, h: f64) -> Result<TimeGrid> {
    let dt = match cfg.time.policy {
        DtPolicy::Refined => cfg.time.refine_factor * h,
        DtPolicy::Fixed => cfg.time.dt,
    };
    TimeGrid::with_step(cfg.time.final_time, dt)
}

/// Manufactured solution of a convergence experiment.
pub fn manufactured_case(cfg: &RunConfig) -> Result<ManufacturedCase> {
    match cfg.experiment {
        Experiment::Smooth => Ok(ManufacturedCase::Smooth(SmoothCase::new(cfg.gamma))),
        Experiment::Lshape => Ok(ManufacturedCase::LShape(LShapeCase::new(cfg.gamma))),
        Experiment::Custom => Ok(ManufacturedCase::Smooth(SmoothCase::with_coefficients(cfg.model_coefficients()?))),
        e => Err(Error::Config(format!("`{}` is not a convergence experiment", e.name()))),
    }
}

/// Called with every computed level; used for snapshots.
pub type LevelHook<'a> = dyn FnMut(usize, &Operators, &Level) -> Result<()> + 'a;

#[derive(Debug, Clone, PartialEq)]
pub struct LevelRun {
    pub n: usize,
    pub steps: usize,
    pub dofs: [usize; 3],
    pub errors: LevelErrors,
    pub seconds: f64,
}

/// One mesh level of a manufactured study.
pub fn run_manufactured_level(
    case: &ManufacturedCase,
    n: usize,
    grid: TimeGrid,
    sigma_ip: f64,
    solver: SolverKind,
    hook: Option<&mut LevelHook<'_>>,
) -> Result<(LevelRun, Operators)> {
    let start = Instant::now();
    let mesh = Arc::new(build_mesh(case.domain(), n)?);
    let h = mesh.h;
    let ops = Operators::new(mesh, sigma_ip)?;
    let mut tracker = ErrorTracker::new(&ops, case, grid);
    let mut stepper = Stepper::new(&ops, case, grid, solver)?;
    let mut hook = hook;
    stepper.run(|k, level| {
        tracker.push(k, level)?;
        match hook.as_deref_mut() {
            Some(f) => f(k, &ops, level),
            None => Ok(()),
        }
    })?;
    let errors = LevelErrors { h, dt: grid.dt(), errors: tracker.finish()? };
    let run = LevelRun { n, steps: grid.steps, dofs: ops.sizes(), errors, seconds: start.elapsed().as_secs_f64() };
    Ok((run, ops))
}

#[derive(Debug)]
pub struct ConvergenceOutcome {
    pub report: ErrorReport,
    pub runs: Vec<LevelRun>,
}

/// Sweep over `levels`, writing outputs when `out` is given.
pub fn run_convergence(cfg: &RunConfig, levels: &[usize], out: Option<&OutputDir>) -> Result<ConvergenceOutcome> {
    let case = manufactured_case(cfg)?;
    let mut report = ErrorReport::default();
    let mut runs = Vec::new();
    for (i, &n) in levels.iter().enumerate() {
        let at_level = |e: Error| Error::Level { level: n, source: Box::new(e) };
        let h = build_mesh(case.domain(), n).map_err(at_level)?.h;
        let grid = time_grid(cfg, h).map_err(at_level)?;
        let mut snap = out.map(|o| o.snapshot_writer(format!("n{n}"), cfg.output.snapshots));
        let mut hook = |k: usize, ops: &Operators, level: &Level| match snap.as_mut() {
            Some(s) => s.write(k, ops, level),
            None => Ok(()),
        };
        let (run, ops) =
            run_manufactured_level(&case, n, grid, cfg.sigma_ip, cfg.solver, Some(&mut hook)).map_err(at_level)?;
        if let Some(o) = out {
            o.write_mesh(&format!("mesh_n{n}.txt"), &ops.v.mesh)?;
            if i == 0 && cfg.output.export_matrices {
                o.write_operators(&format!("n{n}"), &ops, case.coefficients(), grid, cfg.solver)?;
            }
        }
        report.levels.push(run.errors);
        runs.push(run);
    }
    if let Some(o) = out {
        o.write("norms.csv", &report.to_csv())?;
    }
    Ok(ConvergenceOutcome { report, runs })
}

/// Exact integral of a discrete field over an axis-aligned rectangle,
/// divided by the rectangle's area.
pub fn cell_average(space: &FeSpace, coeffs: &[f64], cell: [f64; 4]) -> Result<f64> {
    let [x0, x1, y0, y1] = cell;
    let area = (x1 - x0) * (y1 - y0);
    if !(area > 0.0) {
        return Err(Error::InvalidArgument(format!("empty observation cell {cell:?}")));
    }
    let q = tri_quadrature(4)?;
    let mut total = 0.0;
    let mut covered = 0.0;
    for k in 0..space.mesh.n_triangles() {
        let pts = space.mesh.triangle_points(k);
        let (lo_x, hi_x) = (pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min), pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max));
        let (lo_y, hi_y) = (pts.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min), pts.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max));
        if hi_x <= x0 || lo_x >= x1 || hi_y <= y0 || lo_y >= y1 {
            continue;
        }
        let poly = clip_to_rectangle(pts.to_vec(), cell);
        if poly.len() < 3 {
            continue;
        }
        let map = space.element_map(k);
        for i in 1..poly.len() - 1 {
            let (a, b, c) = (poly[0], poly[i], poly[i + 1]);
            let sub_area = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs();
            if sub_area == 0.0 {
                continue;
            }
            covered += sub_area;
            for (l, w) in q.iter() {
                let x = [l[0] * a[0] + l[1] * b[0] + l[2] * c[0], l[0] * a[1] + l[1] * b[1] + l[2] * c[1]];
                total += w * 2.0 * sub_area * space.eval(coeffs, k, &map, map.to_barycentric(x)).value;
            }
        }
    }
    if (covered - area).abs() > 1e-10 * area.max(1e-300) {
        return Err(Error::InvalidArgument(format!("observation cell {cell:?} is not inside the mesh")));
    }
    Ok(total / area)
}

/// Sutherland-Hodgman clipping of a convex polygon to a rectangle.
fn clip_to_rectangle(mut poly: Vec<Point>, cell: [f64; 4]) -> Vec<Point> {
    let [x0, x1, y0, y1] = cell;
    // (axis, bound, keep-greater)
    for (axis, bound, greater) in [(0, x0, true), (0, x1, false), (1, y0, true), (1, y1, false)] {
        if poly.is_empty() {
            break;
        }
        let inside = |p: &Point| if greater { p[axis] >= bound } else { p[axis] <= bound };
        let mut next = Vec::with_capacity(poly.len() + 2);
        for i in 0..poly.len() {
            let (cur, prev) = (poly[i], poly[(i + poly.len() - 1) % poly.len()]);
            let cross = |p: Point, q: Point| {
                let s = (bound - p[axis]) / (q[axis] - p[axis]);
                let mut r = [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])];
                r[axis] = bound;
                r
            };
            match (inside(&prev), inside(&cur)) {
                (true, true) => next.push(cur),
                (true, false) => next.push(cross(prev, cur)),
                (false, true) => {
                    next.push(cross(prev, cur));
                    next.push(cur);
                }
                (false, false) => {}
            }
        }
        poly = next;
    }
    poly
}

/// Cell-averaged deflection, temperature and potential over time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CellSeries {
    pub t: Vec<f64>,
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub p: Vec<f64>,
}

impl CellSeries {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,U_2D,Theta_2D,P_2D\n");
        for i in 0..self.t.len() {
            writeln!(s, "{:.10e},{:.12e},{:.12e},{:.12e}", self.t[i], self.u[i], self.theta[i], self.p[i]).unwrap();
        }
        s
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().chain(&self.theta).chain(&self.p).all(|v| v.is_finite())
    }
}

#[derive(Debug)]
pub struct Example1Outcome {
    pub coefficients: ModelCoefficients,
    pub series: CellSeries,
    pub steps: usize,
    pub dofs: [usize; 3],
    pub seconds: f64,
}

/// Plate run with the configured material, sampled on the observation cell.
pub fn run_example1(cfg: &RunConfig, out: Option<&OutputDir>) -> Result<Example1Outcome> {
    let x = cfg
        .example1
        .as_ref()
        .ok_or_else(|| Error::Config(format!("`{}` has no [example1] section", cfg.experiment.name())))?;
    let coefficients = x.material.coefficients(x.thickness)?;
    coefficients.validate()?;
    coefficients.check_coupling()?;
    run_plate(cfg, &PlateLoads::new(coefficients), out)
}

/// Time loop for arbitrary data on the unit square with cell sampling.
pub fn run_plate<D: ProblemData>(cfg: &RunConfig, data: &D, out: Option<&OutputDir>) -> Result<Example1Outcome> {
    let start = Instant::now();
    let x = cfg.example1.as_ref().ok_or_else(|| Error::Config("missing [example1] section".into()))?;
    let mesh = Arc::new(TriMesh::unit_square(x.mesh_level)?);
    let grid = TimeGrid::with_step(cfg.time.final_time, cfg.time.dt)?;
    let ops = Operators::new(mesh, cfg.sigma_ip)?;
    let mut stepper = Stepper::new(&ops, data, grid, cfg.solver)?;
    let mut series = CellSeries::default();
    let mut snap = out.map(|o| o.snapshot_writer(String::new(), cfg.output.snapshots));
    stepper.run(|k, level| {
        series.t.push(grid.t(k));
        series.u.push(cell_average(&ops.v, &ops.v.extend(&level.u), x.cell)?);
        series.theta.push(cell_average(&ops.w, &ops.w.extend(&level.theta), x.cell)?);
        series.p.push(cell_average(&ops.w, &ops.w.extend(&level.p), x.cell)?);
        match snap.as_mut() {
            Some(s) => s.write(k, &ops, level),
            None => Ok(()),
        }
    })?;
    if let Some(o) = out {
        o.write("timeseries.csv", &series.to_csv())?;
        o.write_mesh("mesh.txt", &ops.v.mesh)?;
        if cfg.output.export_matrices {
            o.write_operators(&format!("n{}", x.mesh_level), &ops, data.coefficients(), grid, cfg.solver)?;
        }
    }
    Ok(Example1Outcome {
        coefficients: *data.coefficients(),
        series,
        steps: grid.steps,
        dofs: ops.sizes(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug)]
pub struct EnergyOutcome {
    /// `(m, E_h(m), accumulated dissipation)`
    pub energy: Vec<(usize, f64, f64)>,
    /// `max_m E_h(m) / E_h(1)`
    pub growth: f64,
    /// Relative drift of the uncoupled, undamped deflection energy.
    pub newmark_drift: f64,
    pub growth_bound: f64,
}

impl EnergyOutcome {
    pub fn passed(&self, drift_tol: f64) -> bool {
        self.growth <= self.growth_bound && self.newmark_drift <= drift_tol
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,energy,dissipation\n");
        for &(m, e, d) in &self.energy {
            writeln!(s, "{m},{e:.12e},{d:.12e}").unwrap();
        }
        s
    }
}

fn random_level(rng: &mut ChaCha8Rng, sizes: [usize; 3]) -> Level {
    let mut v = |k: usize| (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    Level { u: v(sizes[0]), theta: v(sizes[1]), p: v(sizes[2]) }
}

/// Source-free runs from random bounded initial vectors: growth of the
/// discrete energy, and conservation with the coupling switched off.
pub fn run_energy_check(cfg: &RunConfig, out: Option<&OutputDir>) -> Result<EnergyOutcome> {
    let e = &cfg.energy;
    let c = cfg.model_coefficients()?;
    let mesh = Arc::new(TriMesh::unit_square(e.mesh_level)?);
    let ops = Operators::new(mesh, cfg.sigma_ip)?;
    let grid = TimeGrid::new(e.steps as f64 * e.dt, e.steps)?;
    let weights = EnergyWeights { gamma0: e.gamma0.unwrap_or_else(|| default_gamma0(&c)), c_coer: e.c_coer };
    let mut rng = ChaCha8Rng::seed_from_u64(e.seed);

    let data = PlateLoads::new(c).scaled(0.0);
    let mut tracker = EnergyTracker::new(&ops, c, weights, grid.dt())?;
    let mut stepper = Stepper::new(&ops, &data, grid, cfg.solver)?;
    stepper.run_from(random_level(&mut rng, ops.sizes()), |k, l| {
        tracker.push(k, l);
        Ok(())
    })?;
    let energy: Vec<(usize, f64, f64)> =
        tracker.history.iter().zip(&tracker.dissipation_history).map(|(&(m, e), &d)| (m, e, d)).collect();
    let e1 = energy.first().map(|r| r.1).unwrap_or(0.0);
    let max = energy.iter().map(|r| r.1).fold(0.0, f64::max);
    let growth = if e1 > 0.0 { max / e1 } else { f64::INFINITY };

    let mut uncoupled = c;
    uncoupled.alpha = 0.0;
    uncoupled.beta = 0.0;
    let data = PlateLoads::new(uncoupled).scaled(0.0);
    let mut stepper = Stepper::new(&ops, &data, grid, cfg.solver)?;
    let mut prev: Option<Vec<f64>> = None;
    let mut newmark = Vec::new();
    stepper.run_from(random_level(&mut rng, ops.sizes()), |k, l| {
        if let Some(p) = &prev {
            // the first step carries the initial-velocity data
            if k >= 2 {
                newmark.push(newmark_energy(&ops, &uncoupled, grid.dt(), p, &l.u));
            }
        }
        prev = Some(l.u.clone());
        Ok(())
    })?;
    let base = newmark.first().copied().unwrap_or(0.0);
    let newmark_drift = newmark.iter().map(|x| (x - base).abs() / base).fold(0.0, f64::max);

    let outcome = EnergyOutcome { energy, growth, newmark_drift, growth_bound: e.growth_bound };
    if let Some(o) = out {
        o.write("energy.csv", &outcome.to_csv())?;
    }
    Ok(outcome)
}

/// Output directory of one run.
#[derive(Debug, Clone)]
pub struct OutputDir {
    pub root: PathBuf,
}

impl OutputDir {
    pub fn create(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(Self { root })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<()> {
        let path = self.path(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, contents)?;
        Ok(())
    }

    pub fn write_mesh(&self, name: &str, mesh: &TriMesh) -> Result<()> {
        let mut w = BufWriter::new(fs::File::create(self.path(name))?);
        mesh.write_dump(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// Free-DOF operators and the main-step block matrix in coordinate form.
    pub fn write_operators(
        &self,
        tag: &str,
        ops: &Operators,
        coeffs: &ModelCoefficients,
        grid: TimeGrid,
        solver: SolverKind,
    ) -> Result<()> {
        let dir = self.root.join("matrices");
        fs::create_dir_all(&dir)?;
        let save = |name: &str, m: &crate::sparse::SparseMatrix| -> Result<()> {
            let mut w = BufWriter::new(fs::File::create(dir.join(format!("{tag}_{name}.coo")))?);
            m.write_coo(&mut w)?;
            w.flush()?;
            Ok(())
        };
        save("mass_p2", &ops.mass_v)?;
        save("stiffness_p2", &ops.stiff_v)?;
        save("c0ip", &ops.c0ip)?;
        save("coupling", &ops.coupling)?;
        save("mass_p1", &ops.mass_w)?;
        save("stiffness_p1", &ops.stiff_w)?;
        let data = PlateLoads::new(*coeffs).scaled(0.0);
        let stepper = Stepper::new(ops, &data, grid, solver)?;
        save("block_first", stepper.first_system().matrix())?;
        save("block_main", stepper.main_system().matrix())?;
        Ok(())
    }

    fn snapshot_writer(&self, sub: String, every: usize) -> SnapshotWriter {
        let dir = if sub.is_empty() { self.root.join("snapshots") } else { self.root.join("snapshots").join(sub) };
        SnapshotWriter { dir, every }
    }

    /// `manifest.txt`: resolved configuration plus run facts as comments.
    pub fn write_manifest(&self, cfg: &RunConfig, facts: &[(String, String)]) -> Result<()> {
        let mut s = String::new();
        for (k, v) in facts {
            writeln!(s, "# {k}: {v}").unwrap();
        }
        s.push('\n');
        s.push_str(&cfg.to_toml());
        self.write("manifest.txt", &s)
    }
}

/// Nodal values at the mesh vertices every `every` steps.
struct SnapshotWriter {
    dir: PathBuf,
    every: usize,
}

impl SnapshotWriter {
    fn write(&mut self, k: usize, ops: &Operators, level: &Level) -> Result<()> {
        if self.every == 0 || !k.is_multiple_of(self.every) {
            return Ok(());
        }
        write_snapshot(&self.dir.join(format!("step_{k:06}.csv")), ops, level)
    }
}

/// `x,y,U,Theta,P` per vertex.
pub fn write_snapshot(path: &Path, ops: &Operators, level: &Level) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let (u, th, p) = (ops.v.extend(&level.u), ops.w.extend(&level.theta), ops.w.extend(&level.p));
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "x,y,U,Theta,P")?;
    for (i, x) in ops.w.mesh.vertices.iter().enumerate() {
        writeln!(w, "{:.10e},{:.10e},{:.12e},{:.12e},{:.12e}", x[0], x[1], u[i], th[i], p[i])?;
    }
    w.flush()?;
    Ok(())
}
