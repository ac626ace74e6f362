use serde::Serialize;

use super::{compare_to_closed_form, integrate, ClosedFormError, NumericsError, Trajectory};
use crate::expr::Assignment;
use crate::submodel::{flow_map, Solution, SolutionKind};

/// Request for one particle path of a reduced family.
#[derive(Debug, Clone, Serialize)]
pub struct TraceSpec {
    pub kind: SolutionKind,
    /// Position at `t = 0`.
    pub start: [f64; 3],
    /// Initial axial velocity; non-isochoric family only.
    pub u0: Option<f64>,
    pub t0: f64,
    pub t1: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceResult {
    pub spec: TraceSpec,
    pub labels: [f64; 3],
    pub end: [f64; 3],
    pub error: ClosedFormError,
    #[serde(skip)]
    pub trajectory: Trajectory<f64>,
}

/// Integrates the path through `start` and compares it with the flow map.
/// Non-isochoric starts must lie on `x + k0 y + m0 z = 0`.
pub fn trace(spec: &TraceSpec, consts: &Assignment) -> Result<TraceResult, NumericsError> {
    let kind = spec.kind;
    let fm = flow_map(kind).ok_or_else(|| NumericsError::Labels(kind.name().into()))?;
    let [sx, sy, sz] = spec.start;
    let labels = if kind.isochoric() {
        spec.start
    } else {
        let k = consts.get("k0").unwrap_or(f64::NAN);
        let m = consts.get("m0").unwrap_or(f64::NAN);
        if (sx + k * sy + m * sz).abs() > 1e-12 {
            return Err(NumericsError::Labels(format!(
                "start {:?} is off the plane x + k0 y + m0 z = 0",
                spec.start
            )));
        }
        [spec.u0.ok_or_else(|| NumericsError::Labels("u0".into()))?, sy, sz]
    };
    let mut env = consts.clone().with("t", spec.t0);
    for (l, v) in fm.labels.iter().zip(labels) {
        env.set(l.name(), v);
    }
    let x0 = fm.eval(&env).ok_or_else(|| NumericsError::Eval {
        t: spec.t0,
        msg: "closed form".into(),
    })?;
    let sol = Solution::new(kind);
    let mut tr = integrate(&sol.velocity(), consts, x0, spec.t0, spec.t1, spec.h)?;
    tr.label = match spec.u0 {
        Some(u0) if !kind.isochoric() => format!("{} start={:?} u0={u0}", kind.name(), spec.start),
        _ => format!("{} start={:?}", kind.name(), spec.start),
    };
    let error = compare_to_closed_form(&tr, &fm, consts, labels)?;
    let end = tr.pos.last().copied().unwrap_or(x0);
    Ok(TraceResult {
        spec: spec.clone(),
        labels,
        end,
        error,
        trajectory: tr,
    })
}
