use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::expr::Assignment;
use crate::linalg;
use crate::rng::seeded;
use crate::submodel::FlowMap;

/// Unit sphere of labels pushed through an affine flow map at time `t`.
#[derive(Debug, Clone, Serialize)]
pub struct SphereReport {
    pub t: f64,
    pub samples: usize,
    /// Image quadric `XᵀAX + bᵀX + c = 0`.
    pub a: [[f64; 3]; 3],
    pub b: [f64; 3],
    pub c: f64,
    pub max_residual: f64,
    pub volume_jacobian: f64,
    pub volume_quadric: f64,
}

/// The labels of `fm` must enter affinely (true for the isochoric map).
pub fn sphere_transport(fm: &FlowMap, consts: &Assignment, n: usize, t: f64, seed: u64) -> Option<SphereReport> {
    let mut env = consts.clone().with("t", t);
    for l in &fm.labels {
        env.set(l.name(), 0.0);
    }
    let g = fm.eval(&env)?;
    let mut fwd = vec![vec![0.0; 3]; 3];
    for (i, p) in fm.position.iter().enumerate() {
        for (j, l) in fm.labels.iter().enumerate() {
            fwd[i][j] = p.diff(l).eval(&env).ok()?;
        }
    }
    // labels = M X + d with M = F⁻¹, d = −F⁻¹ g
    let m = linalg::inverse(&fwd)?;
    let d: Vec<f64> = (0..3).map(|i| -(0..3).map(|k| m[i][k] * g[k]).sum::<f64>()).collect();
    let mut a = [[0.0; 3]; 3];
    let mut b = [0.0; 3];
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] = (0..3).map(|k| m[k][i] * m[k][j]).sum();
        }
        b[i] = 2.0 * (0..3).map(|k| m[k][i] * d[k]).sum::<f64>();
    }
    let c = d.iter().map(|v| v * v).sum::<f64>() - 1.0;

    let mut rng = seeded(seed);
    let mut max_residual: f64 = 0.0;
    for _ in 0..n {
        let zc: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * PI);
        let s = (1.0 - zc * zc).sqrt();
        let p0 = [s * phi.cos(), s * phi.sin(), zc];
        let x: Vec<f64> = (0..3)
            .map(|i| g[i] + (0..3).map(|k| fwd[i][k] * p0[k]).sum::<f64>())
            .collect();
        let quad: f64 = (0..3)
            .map(|i| (0..3).map(|j| x[i] * a[i][j] * x[j]).sum::<f64>() + b[i] * x[i])
            .sum::<f64>()
            + c;
        max_residual = max_residual.max(quad.abs());
    }

    let det = |m: &[Vec<f64>]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let ball = 4.0 / 3.0 * PI;
    let volume_jacobian = ball * det(&fwd).abs();
    let av: Vec<Vec<f64>> = a.iter().map(|r| r.to_vec()).collect();
    let ainv = linalg::inverse(&av)?;
    let bab: f64 = (0..3).map(|i| (0..3).map(|j| b[i] * ainv[i][j] * b[j]).sum::<f64>()).sum();
    let volume_quadric = ball * (bab / 4.0 - c).powf(1.5) / det(&av).sqrt();
    Some(SphereReport {
        t,
        samples: n,
        a,
        b,
        c,
        max_residual,
        volume_jacobian,
        volume_quadric,
    })
}
