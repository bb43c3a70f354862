//! Gauss rules on the unit interval and conical-product rules on the
//! reference triangle {(x, y): x, y >= 0, x + y <= 1}.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct QuadRule<P> {
    pub points: Vec<P>,
    pub weights: Vec<f64>,
}

impl<P> QuadRule<P> {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, f64)> {
        self.points.iter().zip(self.weights.iter().copied())
    }
}

/// Triangle degrees accepted by [`tri_quadrature`].
pub const TRIANGLE_DEGREES: [usize; 6] = [2, 4, 5, 6, 8, 10];

/// `k`-point Gauss-Legendre rule on [0, 1].
pub fn gauss_legendre(k: usize) -> QuadRule<f64> {
    assert!(k >= 1);
    let mut points = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k {
        // Chebyshev initial guess, then Newton on P_k
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(k, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(k, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        points[k - 1 - i] = 0.5 * (x + 1.0);
        weights[k - 1 - i] = 0.5 * w;
    }
    QuadRule { points, weights }
}

fn legendre(k: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=k {
        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = p2;
    }
    if k == 0 {
        return (1.0, 0.0);
    }
    let d = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss rule on the unit interval with 2, 3 or 4 points.
pub fn edge_quadrature(points: usize) -> Result<QuadRule<f64>> {
    if !(2..=4).contains(&points) {
        return Err(Error::InvalidArgument(format!("edge rule with {points} points not supported")));
    }
    Ok(gauss_legendre(points))
}

/// Rule on the reference triangle (measure 1/2), exact for total degree
/// `degree`. Points are barycentric `(1 - x - y, x, y)`.
pub fn tri_quadrature(degree: usize) -> Result<QuadRule<[f64; 3]>> {
    if !TRIANGLE_DEGREES.contains(&degree) {
        return Err(Error::InvalidArgument(format!("triangle rule of degree {degree} not supported")));
    }
    // Collapsed map x = u, y = v (1 - u) has Jacobian (1 - u), so the
    // u-direction must integrate degree + 1.
    let k = degree.div_ceil(2) + 1;
    let g = gauss_legendre(k);
    let mut points = Vec::with_capacity(k * k);
    let mut weights = Vec::with_capacity(k * k);
    for (&u, wu) in g.iter() {
        for (&v, wv) in g.iter() {
            let x = u;
            let y = v * (1.0 - u);
            points.push([1.0 - x - y, x, y]);
            weights.push(wu * wv * (1.0 - u));
        }
    }
    Ok(QuadRule { points, weights })
}
