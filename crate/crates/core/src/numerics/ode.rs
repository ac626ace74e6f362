use std::collections::BTreeMap;
use std::io::Write;

use num_traits::Float;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{Assignment, Expr};
use crate::submodel::FlowMap;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("step must be positive, got {0}")]
    Step(f64),
    #[error("empty time range [{0}, {1}]")]
    Range(f64, f64),
    #[error("velocity not evaluable at t = {t}: {msg}")]
    Eval { t: f64, msg: String },
    #[error("closed form needs labels for {0}")]
    Labels(String),
    #[error("csv: {0}")]
    Csv(String),
}

/// Samples `(t, x, y, z)` at a uniform step.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory<F> {
    pub label: String,
    pub constants: BTreeMap<String, f64>,
    pub start: [f64; 3],
    pub t: Vec<F>,
    pub pos: Vec<[F; 3]>,
}

impl<F: Float> Trajectory<F> {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn last(&self) -> Option<(F, [F; 3])> {
        Some((*self.t.last()?, *self.pos.last()?))
    }

    /// CSV with header `t,x,y,z`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), NumericsError> {
        let err = |e: csv::Error| NumericsError::Csv(e.to_string());
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "x", "y", "z"]).map_err(err)?;
        let fmt = |v: F| format!("{:.16e}", v.to_f64().unwrap_or(f64::NAN));
        for (t, p) in self.t.iter().zip(&self.pos) {
            out.write_record([fmt(*t), fmt(p[0]), fmt(p[1]), fmt(p[2])]).map_err(err)?;
        }
        out.flush().map_err(|e| NumericsError::Csv(e.to_string()))
    }
}

/// One classical Runge–Kutta step.
pub fn rk4_step<F: Float, E>(
    f: &mut impl FnMut(F, &[F; 3]) -> Result<[F; 3], E>,
    t: F,
    x: &[F; 3],
    h: F,
) -> Result<[F; 3], E> {
    let two = F::one() + F::one();
    let six = two * (two + F::one());
    let add = |a: &[F; 3], k: &[F; 3], s: F| std::array::from_fn(|i| a[i] + s * k[i]);
    let k1 = f(t, x)?;
    let k2 = f(t + h / two, &add(x, &k1, h / two))?;
    let k3 = f(t + h / two, &add(x, &k2, h / two))?;
    let k4 = f(t + h, &add(x, &k3, h))?;
    Ok(std::array::from_fn(|i| {
        x[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i])
    }))
}

/// Integrates `dx/dt = velocity(t, x)` with fixed-step RK4 from `t0` to
/// `t1`; the step is adjusted to divide the interval evenly.
pub fn integrate<F: Float>(
    velocity: &[Expr; 3],
    consts: &Assignment,
    x0: [F; 3],
    t0: F,
    t1: F,
    h: F,
) -> Result<Trajectory<F>, NumericsError> {
    let hf = h.to_f64().unwrap_or(f64::NAN);
    if !(hf > 0.0) {
        return Err(NumericsError::Step(hf));
    }
    let (a, b) = (t0.to_f64().unwrap_or(f64::NAN), t1.to_f64().unwrap_or(f64::NAN));
    if !(b > a) {
        return Err(NumericsError::Range(a, b));
    }
    let n = ((b - a) / hf - 1e-9).ceil().max(1.0) as usize;
    let step = (t1 - t0) / F::from(n).expect("step count");
    let mut field = |t: F, x: &[F; 3]| -> Result<[F; 3], NumericsError> {
        let tf = t.to_f64().unwrap_or(f64::NAN);
        let mut env = consts.clone().with("t", tf);
        for (name, v) in ["x", "y", "z"].iter().zip(x) {
            env.set(name, v.to_f64().unwrap_or(f64::NAN));
        }
        let mut out = [F::zero(); 3];
        for (o, e) in out.iter_mut().zip(velocity) {
            let v = e.eval(&env).map_err(|err| NumericsError::Eval {
                t: tf,
                msg: err.to_string(),
            })?;
            if !v.is_finite() {
                return Err(NumericsError::Eval {
                    t: tf,
                    msg: "non-finite velocity".into(),
                });
            }
            *o = F::from(v).expect("finite");
        }
        Ok(out)
    };
    let mut ts = Vec::with_capacity(n + 1);
    let mut ps = Vec::with_capacity(n + 1);
    let mut x = x0;
    ts.push(t0);
    ps.push(x);
    for i in 0..n {
        let t = t0 + step * F::from(i).expect("index");
        x = rk4_step(&mut field, t, &x, step)?;
        ts.push(if i + 1 == n { t1 } else { t0 + step * F::from(i + 1).expect("index") });
        ps.push(x);
    }
    Ok(Trajectory {
        label: String::new(),
        constants: consts.values().map(|(k, v)| (k.to_string(), v)).collect(),
        start: x0.map(|v| v.to_f64().unwrap_or(f64::NAN)),
        t: ts,
        pos: ps,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedFormError {
    pub max_euclidean: f64,
    pub max_component: f64,
    pub endpoint_component: f64,
}

/// Distance between samples and the closed-form map with the given label
/// values.
pub fn compare_to_closed_form<F: Float>(
    tr: &Trajectory<F>,
    fm: &FlowMap,
    consts: &Assignment,
    labels: [f64; 3],
) -> Result<ClosedFormError, NumericsError> {
    let mut env = consts.clone();
    for (l, v) in fm.labels.iter().zip(labels) {
        env.set(l.name(), v);
    }
    let mut e = ClosedFormError {
        max_euclidean: 0.0,
        max_component: 0.0,
        endpoint_component: 0.0,
    };
    for (t, p) in tr.t.iter().zip(&tr.pos) {
        let tf = t.to_f64().unwrap_or(f64::NAN);
        env.set("t", tf);
        let exact = fm
            .eval(&env)
            .ok_or_else(|| NumericsError::Labels(format!("{:?}", fm.labels)))?;
        let diff: Vec<f64> = (0..3)
            .map(|i| (p[i].to_f64().unwrap_or(f64::NAN) - exact[i]).abs())
            .collect();
        let comp = diff.iter().cloned().fold(0.0, f64::max);
        e.max_component = e.max_component.max(comp);
        e.max_euclidean = e
            .max_euclidean
            .max(diff.iter().map(|d| d * d).sum::<f64>().sqrt());
        e.endpoint_component = comp;
    }
    Ok(e)
}

/// Least-squares slope of `log err` against `log h`.
pub fn observed_order(samples: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = samples.iter().map(|(h, e)| (h.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
