use proptest::prelude::*;

use gaslie::catalog::{get_entry, ids, parameter_samples, spec, verify_invariants, PairStatus, Params, VerifyConfig};
use gaslie::expr::Expr;
use gaslie::liealg::{l12, random_automorphisms, Subalgebra};
use gaslie::numerics::integrate;
use gaslie::report::algebra_report;
use gaslie::submodel::{figure_constants, t, Solution, SolutionKind};
use gaslie::{qi, Rational, RationalAlgebra};

fn instance(pick: usize) -> (String, Params) {
    let all = ids();
    let id = all[pick % all.len()];
    let grid = parameter_samples(spec(id).unwrap());
    (id.to_string(), grid[pick / all.len() % grid.len()].clone())
}

fn statuses(e: &gaslie::catalog::SubalgebraEntry) -> Vec<PairStatus> {
    let r = verify_invariants(e, &VerifyConfig::default()).unwrap();
    r.pairs.iter().map(|p| p.status).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // μ(Y + Z) in place of Y + Z leaves every verdict unchanged
    #[test]
    fn outer_scaling_keeps_verdicts(pick in 0usize..1000, num in 1i64..5, den in 1i64..4, neg: bool) {
        let (id, p) = instance(pick);
        let e = get_entry(&id, &p).unwrap();
        let before = statuses(&e);
        let mu = Expr::frac(if neg { -num } else { num }, den);
        let mut scaled = e.clone();
        for row in scaled.basis.iter_mut().filter(|r| !r[0].is_zero_const()) {
            for c in row.iter_mut() {
                *c = &mu * &*c;
            }
        }
        prop_assert_eq!(statuses(&scaled), before);
    }

    #[test]
    fn automorphic_images_stay_closed(pick in 0usize..1000, seed in 0u64..500) {
        let (id, p) = instance(pick);
        let g: RationalAlgebra = l12();
        let basis = get_entry(&id, &p).unwrap().rational_basis().unwrap();
        for a in random_automorphisms(seed) {
            let image: Vec<Vec<Rational>> = basis.iter().map(|v| a.apply(v).unwrap()).collect();
            let s = Subalgebra::new(&g, image).unwrap();
            prop_assert!(s.is_closed(&g), "{} under {}", id, a.name());
        }
    }

    // cubic right-hand sides are integrated exactly by RK4
    #[test]
    fn rk4_exact_on_cubics(c in prop::array::uniform4(-3i64..4), x0 in -2.0f64..2.0) {
        let tt = t();
        let poly = Expr::int(c[0]) + Expr::int(c[1]) * &tt + Expr::int(c[2]) * tt.pow(2) + Expr::int(c[3]) * tt.pow(3);
        let v = [poly, Expr::zero(), Expr::zero()];
        let tr = integrate(&v, &figure_constants(), [x0, 0.0, 0.0], 0.0, 2.0, 0.05).unwrap();
        let (t1, end) = tr.last().unwrap();
        let exact = x0 + c[0] as f64 * t1 + c[1] as f64 * t1.powi(2) / 2.0
            + c[2] as f64 * t1.powi(3) / 3.0 + c[3] as f64 * t1.powi(4) / 4.0;
        prop_assert!((end[0] - exact).abs() < 1e-11, "{} vs {}", end[0], exact);
    }

    #[test]
    fn galilean_images_are_solutions(k in 0usize..4, a in prop::array::uniform3(-3i64..4), b in prop::array::uniform3(-3i64..4), c in -3i64..4) {
        let kind = SolutionKind::ALL[k];
        let s = Solution::new(kind);
        let a = a.map(|n| Expr::frac(n, 2));
        let b = b.map(Expr::int);
        let img = s.transform(&a, &b, &Expr::int(c));
        for r in img.full_residuals() {
            prop_assert!(r.is_symbolic_zero(), "{}: {}", kind.name(), r);
        }
    }

    #[test]
    fn algebra_report_is_reproducible(seed: u64) {
        let g: RationalAlgebra = l12();
        let a = serde_json::to_string(&algebra_report(&g, seed, 3)).unwrap();
        let b = serde_json::to_string(&algebra_report(&g, seed, 3)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn dependent_basis_is_rejected() {
    let mut rows = get_entry("4.77", &Params::new()).unwrap().rational_basis().unwrap();
    rows[3] = rows[0].iter().map(|c| c * qi(2)).collect();
    assert!(Subalgebra::new(&l12::<Rational>(), rows).is_err());
}
