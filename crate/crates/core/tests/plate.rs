//! Observation-cell averages, the plate driver, and quadrature stability of
//! the error norms.

use std::sync::Arc;

use plate_c0ip::config::{Experiment, RunConfig};
use plate_c0ip::experiments::{cell_average, run_plate};
use plate_c0ip::fem::{FeSpace, SpaceKind};
use plate_c0ip::mesh::TriMesh;
use plate_c0ip::mms::{ExactSolution, LShapeCase, PlateLoads, SmoothCase};
use plate_c0ip::norms::{h1_semi_error_with_degree, l2_error_with_degree};

fn spaces(mesh: TriMesh) -> (FeSpace, FeSpace) {
    let mesh = Arc::new(mesh);
    (FeSpace::new(mesh.clone(), SpaceKind::P2), FeSpace::new(mesh, SpaceKind::P1))
}

/// Mean of `x^a y^b` over `[x0, x1] x [y0, y1]`.
fn monomial_mean(a: i32, b: i32, c: [f64; 4]) -> f64 {
    let m = |p: i32, lo: f64, hi: f64| (hi.powi(p + 1) - lo.powi(p + 1)) / ((p + 1) as f64 * (hi - lo));
    m(a, c[0], c[1]) * m(b, c[2], c[3])
}

#[test]
fn cell_average_reproduces_polynomials_on_unaligned_cells() {
    let (v, w) = spaces(TriMesh::unit_square(5).unwrap());
    let cells = [[0.13, 0.61, 0.07, 0.33], [5.0 / 64.0, 6.0 / 64.0, 5.0 / 64.0, 6.0 / 64.0], [0.0, 1.0, 0.0, 1.0]];
    for c in cells {
        let one = cell_average(&w, &w.interpolate(|_| 1.0), c).unwrap();
        assert!((one - 1.0).abs() < 1e-13);
        let affine = cell_average(&w, &w.interpolate(|p| 2.0 * p[0] - p[1] + 0.5), c).unwrap();
        let expect = 2.0 * monomial_mean(1, 0, c) - monomial_mean(0, 1, c) + 0.5;
        assert!((affine - expect).abs() < 1e-13, "{affine} vs {expect}");
        let quad = cell_average(&v, &v.interpolate(|p| p[0] * p[0] - 3.0 * p[0] * p[1]), c).unwrap();
        let expect = monomial_mean(2, 0, c) - 3.0 * monomial_mean(1, 1, c);
        assert!((quad - expect).abs() < 1e-13, "{quad} vs {expect}");
    }
}

#[test]
fn cell_average_rejects_uncovered_or_degenerate_cells() {
    let (_, w) = spaces(TriMesh::unit_square(4).unwrap());
    let ones = w.interpolate(|_| 1.0);
    assert!(cell_average(&w, &ones, [0.5, 1.5, 0.2, 0.4]).is_err());
    assert!(cell_average(&w, &ones, [0.3, 0.3, 0.2, 0.4]).is_err());
    let (_, wl) = spaces(TriMesh::lshape(4).unwrap());
    assert!(cell_average(&wl, &wl.interpolate(|_| 1.0), [-0.5, -0.2, -0.5, -0.2]).is_err());
}

fn small_plate(experiment: Experiment) -> RunConfig {
    let mut cfg = RunConfig::preset(experiment);
    cfg.example1.as_mut().unwrap().mesh_level = 8;
    cfg.time.final_time = 8.0 * cfg.time.dt;
    cfg
}

#[test]
fn unloaded_plate_stays_at_rest() {
    for e in [Experiment::Example1Ted, Experiment::Example1Tpe] {
        let cfg = small_plate(e);
        let loads = PlateLoads::new(cfg.model_coefficients().unwrap()).scaled(0.0);
        let run = run_plate(&cfg, &loads, None).unwrap();
        assert_eq!(run.series.t.len(), 9);
        for s in [&run.series.u, &run.series.theta, &run.series.p] {
            assert!(s.iter().all(|&x| x == 0.0));
        }
    }
}

#[test]
fn plate_response_is_linear_in_the_load() {
    for e in [Experiment::Example1Ted, Experiment::Example1Tpe] {
        let cfg = small_plate(e);
        let c = cfg.model_coefficients().unwrap();
        let one = run_plate(&cfg, &PlateLoads::new(c), None).unwrap().series;
        let three = run_plate(&cfg, &PlateLoads::new(c).scaled(3.0), None).unwrap().series;
        for (a, b) in [(&one.u, &three.u), (&one.theta, &three.theta), (&one.p, &three.p)] {
            let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(scale > 0.0);
            for (x, y) in a.iter().zip(b) {
                assert!((3.0 * x - y).abs() <= 1e-11 * 3.0 * scale, "{e:?}: {x} {y}");
            }
        }
    }
}

#[test]
fn error_norms_stable_under_quadrature_refinement() {
    // a perturbed interpolant keeps the errors well above round-off
    let cases: [(TriMesh, &dyn ExactSolution); 2] =
        [(TriMesh::unit_square(8).unwrap(), &SmoothCase::new(-1.0)), (TriMesh::lshape(4).unwrap(), &LShapeCase::new(1.0))];
    for (mesh, exact) in cases {
        let (v, w) = spaces(mesh);
        let t = 0.4;
        let u: Vec<f64> = v.interpolate(|x| exact.u(t, x)).iter().enumerate().map(|(i, z)| z * (1.0 + 0.01 * (i % 3) as f64)).collect();
        let th = w.interpolate(|x| exact.theta(t, x));
        let pairs = [
            (
                l2_error_with_degree(&v, &u, |x| exact.u(t, x), 8),
                l2_error_with_degree(&v, &u, |x| exact.u(t, x), 10),
            ),
            (
                h1_semi_error_with_degree(&v, &u, |x| exact.u_grad(t, x), |x| exact.excluded(x), 8),
                h1_semi_error_with_degree(&v, &u, |x| exact.u_grad(t, x), |x| exact.excluded(x), 10),
            ),
            (
                l2_error_with_degree(&w, &th, |x| exact.theta(t, x), 8),
                l2_error_with_degree(&w, &th, |x| exact.theta(t, x), 10),
            ),
            (
                h1_semi_error_with_degree(&w, &th, |x| exact.theta_grad(t, x), |x| exact.excluded(x), 8),
                h1_semi_error_with_degree(&w, &th, |x| exact.theta_grad(t, x), |x| exact.excluded(x), 10),
            ),
        ];
        for (e8, e10) in pairs {
            assert!(e8 > 0.0);
            assert!((e8 - e10).abs() < 1e-3 * e10, "{e8} vs {e10}");
        }
    }
}
