use super::*;

fn zero(e: &Expr) -> bool {
    e.is_symbolic_zero()
}

#[test]
fn constant_state_is_a_solution() {
    let r0 = rho0();
    for r in reduced_residuals(&Expr::zero(), &Expr::zero(), &Expr::zero(), &r0, &Expr::param("P0")) {
        assert!(zero(&r), "{r}");
    }
    let p = state_fn(0, &r0) + Expr::param("S0");
    for r in GasSystem.residuals(&Expr::zero(), &Expr::zero(), &Expr::zero(), &r0, &p) {
        assert!(zero(&r), "{r}");
    }
}

#[test]
fn families_solve_both_systems() {
    for kind in SolutionKind::ALL {
        let s = Solution::new(kind);
        for (i, r) in s.reduced_residuals().iter().enumerate() {
            assert!(zero(r), "{} reduced[{i}]: {r}", kind.name());
        }
        for (i, r) in s.full_residuals().iter().enumerate() {
            assert!(zero(r), "{} full[{i}]: {r}", kind.name());
        }
    }
}

#[test]
fn perturbed_pressure_is_detected() {
    let s = Solution::new(SolutionKind::IsochoricReduced);
    let bump = Expr::frac(1, 10) * y();
    let res = GasSystem.residuals(&s.u, &s.v, &s.w, &s.rho, &(s.pressure() + bump));
    let v = res[1].test_zero(&sample_box(), &ZeroTest::default());
    assert!(matches!(v, ZeroVerdict::NonZero { .. }), "{v:?}");
}

#[test]
fn vorticity_values() {
    let iso = Solution::new(SolutionKind::IsochoricReduced).vorticity();
    assert!(zero(&iso[0]) && zero(&(&iso[1] - m0())) && zero(&(&iso[2] + k0())));
    let non = Solution::new(SolutionKind::NonisochoricReduced).vorticity();
    assert!(zero(&(&non[1] - m0() * t().recip())));
    let still = Solution::new(SolutionKind::IsochoricReduced);
    let map = [(Symbol::param("k0"), Expr::zero()), (Symbol::param("m0"), Expr::zero())];
    for c in still.vorticity() {
        assert!(zero(&c.subst(&map)));
    }
}

#[test]
fn flow_maps() {
    let fm = flow_map(SolutionKind::IsochoricReduced).unwrap();
    assert!(zero(&(fm.jacobian_det() - Expr::one())));
    let expect_y = -(k0() * t().pow(2)) * (Expr::int(2) * rho0()).recip() + Expr::var("y0");
    assert!(zero(&(&fm.position[1] - expect_y)));
    let at0 = [(Symbol::var("t"), Expr::zero())];
    for (p, l) in fm.position.iter().zip(["x0", "y0", "z0"]) {
        assert!(zero(&(p.subst(&at0) - Expr::var(l))));
    }
    let non = flow_map(SolutionKind::NonisochoricReduced).unwrap();
    assert!(zero(&(non.jacobian_det() - t())));
    let s = Solution::new(SolutionKind::NonisochoricReduced);
    for r in non.velocity_residuals(&s) {
        assert!(zero(&r), "{r}");
    }
    assert!(flow_map(SolutionKind::IsochoricGeneral).is_none());
}

#[test]
fn general_families_reduce() {
    for kind in [SolutionKind::IsochoricGeneral, SolutionKind::NonisochoricGeneral] {
        let red = Solution::new(kind).reduce_constants().unwrap();
        let target = Solution::new(red.kind);
        for (a, b) in [(&red.u, &target.u), (&red.v, &target.v), (&red.w, &target.w), (&red.rho, &target.rho), (&red.p1, &target.p1)] {
            assert!(zero(&(a - b)), "{}: {a} vs {b}", kind.name());
        }
    }
}

#[test]
fn full_reports_pass() {
    for kind in SolutionKind::ALL {
        let r = verify_solution(kind, &ZeroTest::default());
        let bad: Vec<_> = r.checks.iter().filter(|c| c.verdict != ZeroVerdict::SymbolicZero).collect();
        assert!(r.passed, "{}: {bad:?}", kind.name());
    }
}

#[test]
fn geometry() {
    for kind in [SolutionKind::IsochoricReduced, SolutionKind::NonisochoricReduced] {
        let r = geometry_checks(kind, &figure_constants()).unwrap();
        assert!(r.passed, "{r:?}");
    }
    let flat = figure_constants().with("k0", 0.0);
    let r = geometry_checks(SolutionKind::IsochoricReduced, &flat).unwrap();
    assert!(r.checks.iter().any(|c| c.name.starts_with("k0 = 0")));
    assert!(r.passed, "{r:?}");
}
