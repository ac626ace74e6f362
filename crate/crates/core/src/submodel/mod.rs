//! The rank-1, defect-1 submodel of entry 4.77 and its two solution
//! families.
//!
//! Invariants of `⟨X₁, X₂, X₃, Y + X₄⟩` are `t, v, w, ρ` and `P₁ = P − u`;
//! the defective unknown is `u(t, x, y, z)`. Constants of a family are
//! parameters `k0, m0, rho0, v0, w0, n0, P0`; the state function `f` is
//! opaque throughout.

mod geometry;

use serde::Serialize;

use crate::expr::{Assignment, SampleBox, Symbol, ZeroTest, ZeroVerdict};
use crate::Expr;

pub use geometry::{affine_residuals, geometry_checks, GeometryCheck, GeometryReport};

pub fn t() -> Expr {
    Expr::var("t")
}
pub fn x() -> Expr {
    Expr::var("x")
}
pub fn y() -> Expr {
    Expr::var("y")
}
pub fn z() -> Expr {
    Expr::var("z")
}

fn space() -> [Symbol; 3] {
    [Symbol::var("x"), Symbol::var("y"), Symbol::var("z")]
}

pub fn k0() -> Expr {
    Expr::param("k0")
}
pub fn m0() -> Expr {
    Expr::param("m0")
}
pub fn rho0() -> Expr {
    Expr::symbol(Symbol::positive_param("rho0"))
}

/// `f(arg)` and its derivatives, `f` opaque.
pub fn state_fn(order: u32, arg: &Expr) -> Expr {
    Expr::func("f", order, arg)
}

fn d(e: &Expr, name: &str) -> Expr {
    e.diff(&Symbol::var(name))
}

/// The gas dynamics system with state equation `P = f(ρ) + S`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GasSystem;

impl GasSystem {
    /// Residuals: three momentum equations, continuity, and the pressure
    /// equation `DP + ρ f'(ρ) div u`.
    pub fn residuals(&self, u: &Expr, v: &Expr, w: &Expr, rho: &Expr, p: &Expr) -> [Expr; 5] {
        let total = |g: &Expr| d(g, "t") + u * d(g, "x") + v * d(g, "y") + w * d(g, "z");
        let div = d(u, "x") + d(v, "y") + d(w, "z");
        let inv = rho.recip();
        [
            total(u) + &inv * d(p, "x"),
            total(v) + &inv * d(p, "y"),
            total(w) + &inv * d(p, "z"),
            total(rho) + rho * &div,
            total(p) + rho * state_fn(1, rho) * &div,
        ]
    }
}

/// Residuals of the submodel for `u(t,x,y,z)` and `v, w, ρ, P₁` of `t`.
pub fn reduced_residuals(u: &Expr, v: &Expr, w: &Expr, rho: &Expr, p1: &Expr) -> [Expr; 5] {
    let convect = d(u, "t") + u * d(u, "x") + v * d(u, "y") + w * d(u, "z");
    let inv = rho.recip();
    [
        &convect + &inv * d(u, "x"),
        d(v, "t") + &inv * d(u, "y"),
        d(w, "t") + &inv * d(u, "z"),
        d(rho, "t") + rho * d(u, "x"),
        d(p1, "t") + &convect + rho * state_fn(1, rho) * d(u, "x"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionKind {
    IsochoricGeneral,
    IsochoricReduced,
    NonisochoricGeneral,
    NonisochoricReduced,
}

impl SolutionKind {
    pub const ALL: [SolutionKind; 4] = [
        SolutionKind::IsochoricGeneral,
        SolutionKind::IsochoricReduced,
        SolutionKind::NonisochoricGeneral,
        SolutionKind::NonisochoricReduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolutionKind::IsochoricGeneral => "isochoric-general",
            SolutionKind::IsochoricReduced => "isochoric-reduced",
            SolutionKind::NonisochoricGeneral => "nonisochoric-general",
            SolutionKind::NonisochoricReduced => "nonisochoric-reduced",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn isochoric(self) -> bool {
        matches!(self, SolutionKind::IsochoricGeneral | SolutionKind::IsochoricReduced)
    }

    pub fn reduced(self) -> bool {
        matches!(self, SolutionKind::IsochoricReduced | SolutionKind::NonisochoricReduced)
    }
}

/// A solution `(u, v, w, ρ, P₁)` in `(t, x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub kind: SolutionKind,
    pub u: Expr,
    pub v: Expr,
    pub w: Expr,
    pub rho: Expr,
    pub p1: Expr,
}

impl Solution {
    pub fn new(kind: SolutionKind) -> Self {
        let (k0, m0, r0) = (k0(), m0(), rho0());
        let (t, x, y, z) = (t(), x(), y(), z());
        let (v0, w0, n0, p0) = (
            Expr::param("v0"),
            Expr::param("w0"),
            Expr::param("n0"),
            Expr::param("P0"),
        );
        let kk = &k0 * &k0 + &m0 * &m0;
        let half = Expr::frac(1, 2);
        let drift = |c: &Expr| -(c * &t) * r0.recip();
        let general = !kind.reduced();
        let (vc, wc) = if general { (v0.clone(), w0.clone()) } else { (Expr::zero(), Expr::zero()) };
        let v = drift(&k0) + &vc;
        let w = drift(&m0) + &wc;
        if kind.isochoric() {
            let mut u = &k0 * &y + &m0 * &z + &half * &kk * t.pow(2) * r0.recip();
            let mut p1 = Expr::zero();
            if general {
                u = u - (&k0 * &v0 + &m0 * &w0) * &t + &n0;
                p1 = p0;
            }
            Solution { kind, u, v, w, rho: r0, p1 }
        } else {
            let it = t.recip();
            let mut u = (&x + &k0 * &y + &m0 * &z) * &it
                + &half * (&kk - Expr::one()) * &t * r0.recip();
            let rho = &r0 * &it;
            let mut p1 = state_fn(0, &rho) + &t * r0.recip();
            if general {
                u = u + &n0 * &it - &k0 * &v0 - &m0 * &w0;
                p1 = p1 + p0;
            }
            Solution { kind, u, v, w, rho, p1 }
        }
    }

    /// `P = P₁ + u`.
    pub fn pressure(&self) -> Expr {
        &self.p1 + &self.u
    }

    /// `S = P − f(ρ)`.
    pub fn entropy(&self) -> Expr {
        self.pressure() - state_fn(0, &self.rho)
    }

    /// Pressure and entropy as written out for the reduced families.
    pub fn stated_pressure_entropy(&self) -> Option<(Expr, Expr)> {
        let (k0, m0, r0) = (k0(), m0(), rho0());
        let (t, x, y, z) = (t(), x(), y(), z());
        let kk = &k0 * &k0 + &m0 * &m0;
        let half = Expr::frac(1, 2);
        match self.kind {
            SolutionKind::IsochoricReduced => {
                let p = &k0 * &y + &m0 * &z + &half * &kk * t.pow(2) * r0.recip();
                let s = &p - state_fn(0, &r0);
                Some((p, s))
            }
            SolutionKind::NonisochoricReduced => {
                let s = (&x + &k0 * &y + &m0 * &z) * t.recip()
                    + &half * (&kk - Expr::one()) * &t * r0.recip()
                    + &t * r0.recip();
                let p = &s + state_fn(0, &(&r0 * t.recip()));
                Some((p, s))
            }
            _ => None,
        }
    }

    pub fn reduced_residuals(&self) -> [Expr; 5] {
        reduced_residuals(&self.u, &self.v, &self.w, &self.rho, &self.p1)
    }

    pub fn full_residuals(&self) -> [Expr; 5] {
        GasSystem.residuals(&self.u, &self.v, &self.w, &self.rho, &self.pressure())
    }

    /// `(w_y − v_z, u_z − w_x, v_x − u_y)`.
    pub fn vorticity(&self) -> [Expr; 3] {
        [
            d(&self.w, "y") - d(&self.v, "z"),
            d(&self.u, "z") - d(&self.w, "x"),
            d(&self.v, "x") - d(&self.u, "y"),
        ]
    }

    pub fn velocity(&self) -> [Expr; 3] {
        [self.u.clone(), self.v.clone(), self.w.clone()]
    }

    /// Image under space translation `a`, Galilean boost `b` and pressure
    /// translation `c`: fields evaluated at `x − a − t b`, velocity shifted
    /// by `b`, pressure by `c`.
    pub fn transform(&self, a: &[Expr; 3], b: &[Expr; 3], c: &Expr) -> Solution {
        let map: Vec<(Symbol, Expr)> = space()
            .into_iter()
            .zip([x(), y(), z()])
            .enumerate()
            .map(|(i, (s, e))| (s, e - &a[i] - t() * &b[i]))
            .collect();
        let at = |e: &Expr| e.subst(&map);
        let u = at(&self.u) + &b[0];
        let p = at(&self.pressure()) + c;
        Solution {
            kind: self.kind,
            p1: &p - &u,
            u,
            v: at(&self.v) + &b[1],
            w: at(&self.w) + &b[2],
            rho: at(&self.rho),
        }
    }

    /// The transform that removes the free constants of a general family.
    pub fn reduce_constants(&self) -> Option<Solution> {
        let (v0, w0, n0, p0) = (
            Expr::param("v0"),
            Expr::param("w0"),
            Expr::param("n0"),
            Expr::param("P0"),
        );
        let z = Expr::zero;
        let mut out = match self.kind {
            SolutionKind::IsochoricGeneral => {
                self.transform(&[z(), z(), z()], &[-n0.clone(), -v0, -w0], &(-p0 - n0))
            }
            SolutionKind::NonisochoricGeneral => {
                self.transform(&[n0, z(), z()], &[z(), -v0, -w0], &-p0)
            }
            _ => return None,
        };
        out.kind = match self.kind {
            SolutionKind::IsochoricGeneral => SolutionKind::IsochoricReduced,
            _ => SolutionKind::NonisochoricReduced,
        };
        Some(out)
    }
}

/// Closed-form particle positions in terms of labels.
#[derive(Debug, Clone)]
pub struct FlowMap {
    pub kind: SolutionKind,
    /// `(x0, y0, z0)` for the isochoric map, `(u0, y0, z0)` otherwise.
    pub labels: [Symbol; 3],
    pub position: [Expr; 3],
}

pub fn flow_map(kind: SolutionKind) -> Option<FlowMap> {
    let (k0, m0, r0) = (k0(), m0(), rho0());
    let t = t();
    let lab = |n: &str| Symbol::var(n);
    let fall = |c: &Expr| -(c * t.pow(2)) * (Expr::int(2) * &r0).recip();
    let (y0, z0) = (Expr::var("y0"), Expr::var("z0"));
    let lateral = [fall(&k0) + &y0, fall(&m0) + &z0];
    let [py, pz] = lateral;
    match kind {
        SolutionKind::IsochoricReduced => Some(FlowMap {
            kind,
            labels: [lab("x0"), lab("y0"), lab("z0")],
            position: [(&k0 * &y0 + &m0 * &z0) * &t + Expr::var("x0"), py, pz],
        }),
        SolutionKind::NonisochoricReduced => Some(FlowMap {
            kind,
            labels: [lab("u0"), lab("y0"), lab("z0")],
            position: [
                -(&k0 * &y0 + &m0 * &z0) + fall(&Expr::one()) + Expr::var("u0") * &t,
                py,
                pz,
            ],
        }),
        _ => None,
    }
}

impl FlowMap {
    fn along(&self) -> Vec<(Symbol, Expr)> {
        space().into_iter().zip(self.position.iter().cloned()).collect()
    }

    /// `d/dt x(t) − u(t, x(t))` componentwise.
    pub fn velocity_residuals(&self, s: &Solution) -> [Expr; 3] {
        let map = self.along();
        let vel = s.velocity();
        std::array::from_fn(|i| d(&self.position[i], "t") - vel[i].subst(&map))
    }

    /// `det ∂(x, y, z)/∂(labels)`.
    pub fn jacobian_det(&self) -> Expr {
        let m: Vec<Vec<Expr>> = self
            .position
            .iter()
            .map(|p| self.labels.iter().map(|l| p.diff(l)).collect())
            .collect();
        let c = |i: usize, j: usize| &m[i][j];
        c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
            + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
    }

    /// Positions with the constants and labels bound.
    pub fn eval(&self, a: &Assignment) -> Option<[f64; 3]> {
        let mut out = [0.0; 3];
        for (o, p) in out.iter_mut().zip(&self.position) {
            *o = p.eval(a).ok()?;
        }
        Some(out)
    }

    /// `x(−t)` with `u0 → −u0`, minus `x(t)`.
    pub fn time_reversal_residuals(&self) -> [Expr; 3] {
        let mut map = vec![(Symbol::var("t"), -t())];
        if self.labels[0].name() == "u0" {
            map.push((Symbol::var("u0"), -Expr::var("u0")));
        }
        std::array::from_fn(|i| self.position[i].subst(&map) - &self.position[i])
    }
}

/// Eulerian fields written along the flow.
#[derive(Debug, Clone)]
pub struct LagrangianFields {
    pub velocity: [Expr; 3],
    pub acceleration: [Expr; 3],
    pub rho: Expr,
    pub pressure: Expr,
    pub entropy: Expr,
}

pub fn lagrangian_fields(s: &Solution, fm: &FlowMap) -> LagrangianFields {
    let map = fm.along();
    let velocity = s.velocity().map(|v| v.subst(&map));
    let acceleration = fm.position.clone().map(|p| d(&d(&p, "t"), "t"));
    LagrangianFields {
        velocity,
        acceleration,
        rho: s.rho.subst(&map),
        pressure: s.pressure().subst(&map),
        entropy: s.entropy().subst(&map),
    }
}

/// Sampling box for the solution checks: `t > 0`, positive `ρ₀`.
pub fn sample_box() -> SampleBox {
    SampleBox::new()
}

/// One named symbolic identity and its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub verdict: ZeroVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionReport {
    pub kind: SolutionKind,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

/// Every symbolic identity attached to a family.
pub fn verify_solution(kind: SolutionKind, cfg: &ZeroTest) -> SolutionReport {
    let s = Solution::new(kind);
    let dom = sample_box();
    let mut items: Vec<(String, Expr)> = Vec::new();
    for (i, r) in s.reduced_residuals().into_iter().enumerate() {
        items.push((format!("reduced[{i}]"), r));
    }
    for (i, r) in s.full_residuals().into_iter().enumerate() {
        items.push((format!("full[{i}]"), r));
    }
    let vort_expected = if kind.isochoric() {
        [Expr::zero(), m0(), -k0()]
    } else {
        [Expr::zero(), m0() * t().recip(), -(k0() * t().recip())]
    };
    for (i, (a, b)) in s.vorticity().iter().zip(&vort_expected).enumerate() {
        items.push((format!("vorticity[{i}]"), a - b));
    }
    if let Some((p, st)) = s.stated_pressure_entropy() {
        items.push(("pressure".into(), s.pressure() - p));
        items.push(("entropy".into(), s.entropy() - st));
    }
    if let Some(red) = s.reduce_constants() {
        let target = Solution::new(red.kind);
        for (name, a, b) in [
            ("u", &red.u, &target.u),
            ("v", &red.v, &target.v),
            ("w", &red.w, &target.w),
            ("rho", &red.rho, &target.rho),
            ("P1", &red.p1, &target.p1),
        ] {
            items.push((format!("reduction.{name}"), a - b));
        }
    }
    if let Some(fm) = flow_map(kind) {
        for (i, r) in fm.velocity_residuals(&s).into_iter().enumerate() {
            items.push((format!("flow[{i}]"), r));
        }
        let j = if kind.isochoric() { Expr::one() } else { t() };
        items.push(("jacobian".into(), fm.jacobian_det() - j));
        let lf = lagrangian_fields(&s, &fm);
        let inv = rho0().recip();
        let accel = if kind.isochoric() {
            [Expr::zero(), -(k0() * &inv), -(m0() * &inv)]
        } else {
            [-inv.clone(), -(k0() * &inv), -(m0() * &inv)]
        };
        for (i, (a, b)) in lf.acceleration.iter().zip(&accel).enumerate() {
            items.push((format!("acceleration[{i}]"), a - b));
        }
        if kind.isochoric() {
            let ks = k0() * Expr::var("y0") + m0() * Expr::var("z0");
            items.push(("lagrangian.u".into(), &lf.velocity[0] - &ks));
            items.push(("lagrangian.P".into(), &lf.pressure - &ks));
        } else {
            let u0 = Expr::var("u0");
            items.push(("lagrangian.u".into(), &lf.velocity[0] - (&u0 - t() * &inv)));
            items.push(("lagrangian.S".into(), &lf.entropy - &u0));
            for (i, r) in fm.time_reversal_residuals().into_iter().enumerate() {
                items.push((format!("time-reversal[{i}]"), r));
            }
        }
    }
    let checks: Vec<IdentityCheck> = items
        .into_iter()
        .map(|(name, e)| IdentityCheck {
            name,
            verdict: e.test_zero(&dom, cfg),
        })
        .collect();
    let passed = checks.iter().all(|c| c.verdict == ZeroVerdict::SymbolicZero);
    SolutionReport { kind, checks, passed }
}

/// Constants used for numeric work: `ρ₀ = k₀ = m₀ = 1`.
pub fn figure_constants() -> Assignment {
    Assignment::new()
        .with("rho0", 1.0)
        .with("k0", 1.0)
        .with("m0", 1.0)
        .with_sample_state_function("f")
}

#[cfg(test)]
mod tests;
