//! Lagrange bases on the reference triangle, parametrised by barycentric
//! coordinates `(l0, l1, l2) = (1 - x - y, x, y)`.
//!
//! P2 ordering: vertex functions 0..3, then the midpoint function of local
//! edge `k` (joining vertices `k` and `k + 1 mod 3`) at index `3 + k`.
//! Gradients and Hessians are taken with respect to the reference
//! coordinates `(x, y)`.

pub type Vec2 = [f64; 2];
pub type Mat2 = [[f64; 2]; 2];

/// Reference gradients of the barycentric coordinates.
pub const BARY_GRADS: [Vec2; 3] = [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]];

#[derive(Debug, Clone, Copy)]
pub struct P2Eval {
    pub values: [f64; 6],
    pub grads: [Vec2; 6],
    pub hessians: [Mat2; 6],
}

#[derive(Debug, Clone, Copy)]
pub struct P1Eval {
    pub values: [f64; 3],
    pub grads: [Vec2; 3],
}

fn outer_sym(a: Vec2, b: Vec2, scale: f64) -> Mat2 {
    [
        [scale * (a[0] * b[0] + b[0] * a[0]), scale * (a[0] * b[1] + b[0] * a[1])],
        [scale * (a[1] * b[0] + b[1] * a[0]), scale * (a[1] * b[1] + b[1] * a[1])],
    ]
}

pub fn eval_p2_basis(l: [f64; 3]) -> P2Eval {
    let g = BARY_GRADS;
    let mut values = [0.0; 6];
    let mut grads = [[0.0; 2]; 6];
    let mut hessians = [[[0.0; 2]; 2]; 6];
    for i in 0..3 {
        values[i] = l[i] * (2.0 * l[i] - 1.0);
        let s = 4.0 * l[i] - 1.0;
        grads[i] = [s * g[i][0], s * g[i][1]];
        // 4 g g^T
        hessians[i] = outer_sym(g[i], g[i], 2.0);
    }
    for k in 0..3 {
        let (a, b) = (k, (k + 1) % 3);
        values[3 + k] = 4.0 * l[a] * l[b];
        grads[3 + k] = [
            4.0 * (l[b] * g[a][0] + l[a] * g[b][0]),
            4.0 * (l[b] * g[a][1] + l[a] * g[b][1]),
        ];
        hessians[3 + k] = outer_sym(g[a], g[b], 4.0);
    }
    P2Eval { values, grads, hessians }
}

pub fn eval_p1_basis(l: [f64; 3]) -> P1Eval {
    P1Eval { values: l, grads: BARY_GRADS }
}

/// Reference coordinates of the six P2 nodes, as barycentrics.
pub const P2_NODES: [[f64; 3]; 6] = [
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.5, 0.5, 0.0],
    [0.0, 0.5, 0.5],
    [0.5, 0.0, 0.5],
];

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bary(rng: &mut ChaCha8Rng) -> [f64; 3] {
        let (mut x, mut y): (f64, f64) = (rng.gen(), rng.gen());
        if x + y > 1.0 {
            x = 1.0 - x;
            y = 1.0 - y;
        }
        [1.0 - x - y, x, y]
    }

    #[test]
    fn p2_lagrange_property() {
        for (i, node) in P2_NODES.iter().enumerate() {
            let e = eval_p2_basis(*node);
            for j in 0..6 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((e.values[j] - expect).abs() < 1e-15, "phi_{j} at node {i}");
            }
        }
    }

    #[test]
    fn p2_partition_of_unity_at_centroid() {
        let e = eval_p2_basis([1.0 / 3.0; 3]);
        assert!((e.values.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let gs = e.grads.iter().fold([0.0, 0.0], |s, g| [s[0] + g[0], s[1] + g[1]]);
        assert!(gs[0].abs() < 1e-15 && gs[1].abs() < 1e-15);
    }

    #[test]
    fn p2_hessians_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h0 = eval_p2_basis(random_bary(&mut rng)).hessians;
        for _ in 0..3 {
            let h = eval_p2_basis(random_bary(&mut rng)).hessians;
            for j in 0..6 {
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(h[j][a][b], h0[j][a][b]);
                    }
                }
            }
        }
    }

    #[test]
    fn p2_gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let eps = 1e-6;
        for _ in 0..5 {
            let l = random_bary(&mut rng);
            let (x, y) = (l[1], l[2]);
            let at = |x: f64, y: f64| eval_p2_basis([1.0 - x - y, x, y]);
            let e = at(x, y);
            for j in 0..6 {
                let dx = (at(x + eps, y).values[j] - at(x - eps, y).values[j]) / (2.0 * eps);
                let dy = (at(x, y + eps).values[j] - at(x, y - eps).values[j]) / (2.0 * eps);
                assert!((dx - e.grads[j][0]).abs() < 1e-8);
                assert!((dy - e.grads[j][1]).abs() < 1e-8);
                let hxy = (at(x, y + eps).grads[j][0] - at(x, y - eps).grads[j][0]) / (2.0 * eps);
                assert!((hxy - e.hessians[j][0][1]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn p1_lagrange_and_barycentric() {
        for i in 0..3 {
            let mut l = [0.0; 3];
            l[i] = 1.0;
            assert_eq!(eval_p1_basis(l).values, l);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let l = random_bary(&mut rng);
            assert_eq!(eval_p1_basis(l).values, l);
            // interpolant of x + 2y reproduces it exactly
            let nodal = [0.0, 1.0, 2.0];
            let v: f64 = (0..3).map(|i| nodal[i] * eval_p1_basis(l).values[i]).sum();
            assert!((v - (l[1] + 2.0 * l[2])).abs() < 1e-15);
        }
    }
}
