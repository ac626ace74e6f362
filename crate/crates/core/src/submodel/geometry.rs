//! Numeric checks of the trajectory geometry.

use serde::Serialize;

use super::{flow_map, SolutionKind};
use crate::expr::Assignment;

#[derive(Debug, Clone, Serialize)]
pub struct GeometryCheck {
    pub name: String,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub kind: SolutionKind,
    pub checks: Vec<GeometryCheck>,
    pub passed: bool,
}

const TOL: f64 = 1e-10;

fn times() -> Vec<f64> {
    (1..=30).map(|i| i as f64 * 0.1).collect()
}

fn check(name: &str, residuals: impl IntoIterator<Item = f64>) -> GeometryCheck {
    let max_residual = residuals.into_iter().fold(0.0f64, |m, r| m.max(r.abs()));
    GeometryCheck {
        name: name.to_string(),
        max_residual,
        passed: max_residual < TOL,
    }
}

/// Trajectory-shape statements for a reduced family at the constants in
/// `consts` (`k0`, `m0`, `rho0`).
pub fn geometry_checks(kind: SolutionKind, consts: &Assignment) -> Option<GeometryReport> {
    let fm = flow_map(kind)?;
    let k = consts.get("k0")?;
    let m = consts.get("m0")?;
    let r = consts.get("rho0")?;
    let at = |labels: [f64; 3], t: f64| {
        let mut a = consts.clone().with("t", t);
        for (l, v) in fm.labels.iter().zip(labels) {
            a.set(l.name(), v);
        }
        fm.eval(&a)
    };
    let mut checks = Vec::new();
    if kind.isochoric() {
        // a particle with k0 y0 + m0 z0 = 0
        let (y0, z0) = if k == 0.0 && m == 0.0 { (1.0, -1.0) } else { (m, -k) };
        let p0 = [0.0, y0, z0];
        let pts: Vec<[f64; 3]> = times().iter().filter_map(|&t| at(p0, t)).collect();
        checks.push(check("straight line stays in x = x0", pts.iter().map(|p| p[0] - p0[0])));
        checks.push(check(
            "straight line m0(y - y0) - k0(z - z0) = 0",
            pts.iter().map(|p| m * (p[1] - y0) - k * (p[2] - z0)),
        ));
        let p0 = [0.5, 1.0, 0.25];
        let s = k * p0[1] + m * p0[2];
        let pts: Vec<[f64; 3]> = times().iter().filter_map(|&t| at(p0, t)).collect();
        if k != 0.0 && s != 0.0 {
            checks.push(check(
                "(y,z) projection has slope m0/k0",
                pts.iter().map(|p| p[2] - (m / k * (p[1] - p0[1]) + p0[2])),
            ));
            let py = |x: f64| p0[1] - k * (x - p0[0]).powi(2) / (2.0 * r * s * s);
            checks.push(check("(x,y) projection is the parabola", pts.iter().map(|p| p[1] - py(p[0]))));
            let pz = |x: f64| p0[2] - m * (x - p0[0]).powi(2) / (2.0 * r * s * s);
            checks.push(check("(x,z) projection is the parabola", pts.iter().map(|p| p[2] - pz(p[0]))));
            let h = 1e-4;
            checks.push(check(
                "(x,y) parabola vertex at (x0, y0)",
                [py(p0[0]) - p0[1], (py(p0[0] + h) - py(p0[0] - h)) / (2.0 * h)],
            ));
        }
        if k == 0.0 && m != 0.0 {
            checks.push(check("k0 = 0 stays in y = y0", pts.iter().map(|p| p[1] - p0[1])));
            let pz = |x: f64| p0[2] - (x - p0[0]).powi(2) / (2.0 * r * m * p0[2] * p0[2]);
            checks.push(check("k0 = 0 (x,z) parabola", pts.iter().map(|p| p[2] - pz(p[0]))));
        }
        checks.push(check(
            "identity at t = 0",
            at(p0, 0.0).map(|p| (0..3).map(|i| p[i] - p0[i]).collect::<Vec<_>>()).unwrap_or(vec![f64::NAN]),
        ));
    } else {
        let labels = [[0.0, 1.0, 1.0], [2.0, -0.5, 0.25], [-1.0, 0.3, 2.0]];
        checks.push(check(
            "labels start on x + k0 y + m0 z = 0",
            labels.iter().filter_map(|l| at(*l, 0.0)).map(|p| p[0] + k * p[1] + m * p[2]),
        ));
        let (y0, z0) = (1.0, 1.0);
        let fan: Vec<[f64; 3]> = [0.0, 1.0, 2.0, 3.0]
            .iter()
            .filter_map(|&u0| at([u0, y0, z0], 3.0))
            .collect();
        checks.push(check(
            "common start shares (y, z) at t = 3",
            fan.iter().flat_map(|p| [p[1] - fan[0][1], p[2] - fan[0][2]]),
        ));
        checks.push(check("x affine in u0 at t = 3", affine_residuals(&fan.iter().map(|p| p[0]).collect::<Vec<_>>())));
        let pts: Vec<[f64; 3]> = times().iter().filter_map(|&t| at([1.0, y0, z0], t)).collect();
        checks.push(check(
            "(y,z) projection m0(y - y0) - k0(z - z0) = 0",
            pts.iter().map(|p| m * (p[1] - y0) - k * (p[2] - z0)),
        ));
    }
    let passed = checks.iter().all(|c| c.passed);
    Some(GeometryReport { kind, checks, passed })
}

/// Residuals of the least-squares line through `(i, v[i])`.
pub fn affine_residuals(v: &[f64]) -> Vec<f64> {
    let n = v.len() as f64;
    let xs: Vec<f64> = (0..v.len()).map(|i| i as f64).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = v.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(v).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    xs.iter().zip(v).map(|(x, y)| y - (my + slope * (x - mx))).collect()
}
