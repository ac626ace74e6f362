//! Coordinate charts on the space `(t, x, y, z, u, v, w, ρ, P)`.
//!
//! Every chart keeps `t`, `ρ`, `P` and stores both directions of its map to
//! the Cartesian chart `D`: `to_d[i]` is the `i`-th Cartesian coordinate in
//! chart coordinates, `from_d[a]` is the `a`-th chart coordinate in
//! Cartesian coordinates.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::expr::{Assignment, Domain, Expr, SampleBox, Symbol};

pub const D_NAMES: [&str; 9] = ["t", "x", "y", "z", "u", "v", "w", "rho", "P"];

/// The Cartesian coordinate symbols in chart order.
pub fn d_coords() -> Vec<Symbol> {
    D_NAMES
        .iter()
        .map(|&n| match n {
            "rho" => Symbol::positive_var(n),
            _ => Symbol::var(n),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChartKind {
    D,
    /// `(v, w)` replaced by `(qbar, varthetabar)` with shift parameter `b`.
    DShift(Expr),
    /// Cylindrical about the `x`-axis with co-rotating velocity angle.
    C,
    /// Spherical position and velocity.
    S,
}

pub struct Chart {
    name: String,
    kind: ChartKind,
    coords: Vec<Symbol>,
    to_d: Vec<Expr>,
    from_d: Vec<Expr>,
    jacobian: OnceLock<Vec<Vec<Expr>>>,
    pub(super) realized: OnceLock<Vec<Vec<Expr>>>,
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chart").field("name", &self.name).finish()
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.kind == other.kind
    }
}

fn e(s: &Symbol) -> Expr {
    s.to_expr()
}

impl Chart {
    fn build(name: String, kind: ChartKind, coords: Vec<Symbol>, to_d: Vec<Expr>, from_d: Vec<Expr>) -> Arc<Chart> {
        Arc::new(Chart {
            name,
            kind,
            coords,
            to_d,
            from_d,
            jacobian: OnceLock::new(),
            realized: OnceLock::new(),
        })
    }

    pub fn d() -> Arc<Chart> {
        static D: OnceLock<Arc<Chart>> = OnceLock::new();
        D.get_or_init(|| {
            let c = d_coords();
            let ex: Vec<Expr> = c.iter().map(e).collect();
            Chart::build("D".into(), ChartKind::D, c, ex.clone(), ex)
        })
        .clone()
    }

    pub fn d_shift(b: &Expr) -> Arc<Chart> {
        static CACHE: OnceLock<Mutex<HashMap<Expr, Arc<Chart>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().unwrap().get(b) {
            return c.clone();
        }
        let chart = Self::make_d_shift(b);
        cache.lock().unwrap().insert(b.clone(), chart.clone());
        chart
    }

    fn make_d_shift(b: &Expr) -> Arc<Chart> {
        let d = d_coords();
        let (t, y, z, v, w) = (e(&d[0]), e(&d[2]), e(&d[3]), e(&d[5]), e(&d[6]));
        let qb = Symbol::positive_var("qbar");
        let th = Symbol::var("varthetabar");
        let den = (&t * &t + b * b).recip();
        let sv = (&t * &y + b * &z) * &den;
        let sw = (&t * &z - b * &y) * &den;
        let mut coords = d.clone();
        coords[5] = qb.clone();
        coords[6] = th.clone();
        let mut to_d: Vec<Expr> = coords.iter().map(e).collect();
        to_d[5] = &sv + e(&qb) * e(&th).cos();
        to_d[6] = &sw + e(&qb) * e(&th).sin();
        let mut from_d: Vec<Expr> = d.iter().map(e).collect();
        let (dv, dw) = (&v - &sv, &w - &sw);
        from_d[5] = (&dv * &dv + &dw * &dw).sqrt();
        from_d[6] = Expr::atan2(&dw, &dv);
        Chart::build(format!("D-shift(b={b})"), ChartKind::DShift(b.clone()), coords, to_d, from_d)
    }

    pub fn cylindrical() -> Arc<Chart> {
        static C: OnceLock<Arc<Chart>> = OnceLock::new();
        C.get_or_init(|| {
            let d = d_coords();
            let (y, z, v, w) = (e(&d[2]), e(&d[3]), e(&d[5]), e(&d[6]));
            let r = Symbol::positive_var("r");
            let th = Symbol::var("theta");
            let q = Symbol::positive_var("q");
            let vt = Symbol::var("vartheta");
            let coords = vec![
                d[0].clone(), d[1].clone(), r.clone(), th.clone(), d[4].clone(),
                q.clone(), vt.clone(), d[7].clone(), d[8].clone(),
            ];
            let (ct, st) = (e(&th).cos(), e(&th).sin());
            let big_v = e(&q) * e(&vt).cos();
            let big_w = e(&q) * e(&vt).sin();
            let to_d = vec![
                e(&d[0]), e(&d[1]),
                e(&r) * &ct, e(&r) * &st,
                e(&d[4]),
                &big_v * &ct - &big_w * &st,
                &big_v * &st + &big_w * &ct,
                e(&d[7]), e(&d[8]),
            ];
            let from_d = vec![
                e(&d[0]), e(&d[1]),
                (&y * &y + &z * &z).sqrt(),
                Expr::atan2(&z, &y),
                e(&d[4]),
                (&v * &v + &w * &w).sqrt(),
                Expr::atan2(&(&w * &y - &v * &z), &(&v * &y + &w * &z)),
                e(&d[7]), e(&d[8]),
            ];
            Chart::build("C".into(), ChartKind::C, coords, to_d, from_d)
        })
        .clone()
    }

    pub fn spherical() -> Arc<Chart> {
        static S: OnceLock<Arc<Chart>> = OnceLock::new();
        S.get_or_init(|| {
            let d = d_coords();
            let (x, y, z) = (e(&d[1]), e(&d[2]), e(&d[3]));
            let (u, v, w) = (e(&d[4]), e(&d[5]), e(&d[6]));
            let rs = Symbol::positive_var("r_s");
            let ts = Symbol::polar_var("theta_s");
            let ph = Symbol::var("phi");
            let qs = Symbol::positive_var("q_s");
            let vs = Symbol::polar_var("vartheta_s");
            let vp = Symbol::var("varphi");
            let coords = vec![
                d[0].clone(), rs.clone(), ts.clone(), ph.clone(),
                qs.clone(), vs.clone(), vp.clone(), d[7].clone(), d[8].clone(),
            ];
            let (st, ct) = (e(&ts).sin(), e(&ts).cos());
            let (sp, cp) = (e(&ph).sin(), e(&ph).cos());
            let bu = e(&qs) * e(&vs).cos();
            let bv = e(&qs) * e(&vs).sin() * e(&vp).cos();
            let bw = e(&qs) * e(&vs).sin() * e(&vp).sin();
            let radial = &bu * &st + &bv * &ct;
            let to_d = vec![
                e(&d[0]),
                e(&rs) * &st * &cp,
                e(&rs) * &st * &sp,
                e(&rs) * &ct,
                &radial * &cp - &bw * &sp,
                &radial * &sp + &bw * &cp,
                &bu * &ct - &bv * &st,
                e(&d[7]), e(&d[8]),
            ];
            let rxy2 = &x * &x + &y * &y;
            let r2 = &rxy2 + &z * &z;
            let q2 = &u * &u + &v * &v + &w * &w;
            let dot = &x * &u + &y * &v + &z * &w;
            let from_d = vec![
                e(&d[0]),
                r2.sqrt(),
                Expr::atan2(&rxy2.sqrt(), &z),
                Expr::atan2(&y, &x),
                q2.sqrt(),
                Expr::atan2(&(&r2 * &q2 - &dot * &dot).sqrt(), &dot),
                Expr::atan2(
                    &(r2.sqrt() * (&x * &v - &y * &u)),
                    &(&z * (&x * &u + &y * &v) - &rxy2 * &w),
                ),
                e(&d[7]), e(&d[8]),
            ];
            Chart::build("S".into(), ChartKind::S, coords, to_d, from_d)
        })
        .clone()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ChartKind {
        &self.kind
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn coord(&self, name: &str) -> Option<&Symbol> {
        self.coords.iter().find(|s| s.name() == name)
    }

    pub fn to_d(&self) -> &[Expr] {
        &self.to_d
    }

    pub fn from_d(&self) -> &[Expr] {
        &self.from_d
    }

    pub fn is_cartesian(&self) -> bool {
        self.kind == ChartKind::D
    }

    /// `(D symbol, Cartesian coordinate in chart terms)` pairs.
    pub fn pullback_map(&self) -> Vec<(Symbol, Expr)> {
        d_coords().into_iter().zip(self.to_d.iter().cloned()).collect()
    }

    /// `J[a][i] = (∂Φᵃ/∂xⁱ)∘ψ` in chart coordinates, computed once.
    pub fn jacobian(&self) -> &Vec<Vec<Expr>> {
        self.jacobian.get_or_init(|| {
            let d = d_coords();
            let map = self.pullback_map();
            self.from_d
                .iter()
                .map(|phi| d.iter().map(|xi| phi.diff(xi).subst(&map)).collect())
                .collect()
        })
    }

    /// Sampling box for this chart's coordinates: positive quantities and
    /// angles kept on one branch, `t > 0`.
    pub fn sample_box(&self) -> SampleBox {
        let mut b = SampleBox::new().default_range(0.5, 2.0);
        for s in &self.coords {
            b = match s.domain() {
                Domain::PolarAngle => b.range(s.name(), 0.2, PI / 2.0 - 0.2),
                _ if is_angle(s.name()) => b.range(s.name(), 0.1, PI / 2.0 - 0.1),
                Domain::Positive => b.range(s.name(), 0.5, 2.0),
                Domain::Real => b.range(s.name(), 0.5, 2.0),
            };
        }
        b
    }

    /// Max deviation of chart → D → chart at a point given in chart
    /// coordinates.
    pub fn round_trip_error(&self, point: &Assignment) -> Result<f64, crate::expr::EvalError> {
        let mut dpt = Assignment::new();
        for (sym, ex) in d_coords().iter().zip(&self.to_d) {
            dpt.set(sym.name(), ex.eval(point)?);
        }
        for (n, v) in point.values() {
            if dpt.get(n).is_none() {
                dpt.set(n, v);
            }
        }
        let mut worst: f64 = 0.0;
        for (sym, phi) in self.coords.iter().zip(&self.from_d) {
            let back = phi.eval(&dpt)?;
            let orig = point
                .get(sym.name())
                .ok_or_else(|| crate::expr::EvalError::Unbound(sym.name().to_string()))?;
            let mut diff = (back - orig).abs();
            if is_angle(sym.name()) {
                diff = diff.min((diff - 2.0 * PI).abs());
            }
            worst = worst.max(diff);
        }
        Ok(worst)
    }
}

fn is_angle(name: &str) -> bool {
    matches!(
        name,
        "theta" | "vartheta" | "varthetabar" | "theta_s" | "phi" | "vartheta_s" | "varphi"
    )
}
