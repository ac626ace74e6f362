use super::*;
use crate::expr::{Symbol, ZeroTest};
use crate::liealg::l12;
use crate::rng::seeded;

fn d() -> Arc<Chart> {
    Chart::d()
}

fn var(chart: &Chart, name: &str) -> Expr {
    chart.coord(name).unwrap().to_expr()
}

#[test]
fn cartesian_realizations() {
    let x7 = realize(7, &d()).unwrap();
    assert_eq!(x7.to_string(), "(-z)∂y + (y)∂z + (-w)∂v + (v)∂w");
    assert_eq!(realize(0, &d()).unwrap().to_string(), "∂P");
    assert_eq!(realize(12, &d()), Err(FieldError::Index(12)));
}

#[test]
fn apply_examples() {
    let c = d();
    let p_minus_u = var(&c, "P") - var(&c, "u");
    assert!(realize(0, &c).unwrap().apply(&p_minus_u).unwrap().is_one_const());
    let lnt = var(&c, "t").ln_abs();
    assert!(realize(11, &c).unwrap().apply(&lnt).unwrap().is_one_const());
    let err = realize(1, &c).unwrap().apply(&Expr::var("r")).unwrap_err();
    assert!(matches!(err, FieldError::ForeignVariable { .. }));
}

#[test]
fn commutator_examples() {
    let c = d();
    let f = |i| realize(i, &c).unwrap();
    assert_eq!(f(4).commutator(&f(10)).unwrap(), f(1).scale(&Expr::int(-1)));
    assert!(f(1).commutator(&f(2)).unwrap().is_zero());
    assert_eq!(f(7).commutator(&f(8)).unwrap(), f(9).scale(&Expr::int(-1)));
    let cyl = realize(7, &Chart::cylindrical()).unwrap();
    assert!(matches!(
        f(1).commutator(&cyl),
        Err(FieldError::ChartMismatch(..))
    ));
}

#[test]
fn realization_matches_keyed_table() {
    let keyed = l12();
    let diff = table_diff(&keyed);
    assert!(diff.is_empty(), "{diff:?}");
    assert!(realized_algebra().jacobi_report().is_empty());
}

#[test]
fn decompose_rejects_non_generators() {
    let c = d();
    let t = var(&c, "t");
    let mut coeffs = vec![Expr::zero(); 9];
    coeffs[1] = t.pow(2);
    assert_eq!(
        decompose(&VectorField::new(c, coeffs)),
        Err(FieldError::NotInSpan)
    );
}

#[test]
fn rotation_about_x_is_theta_translation() {
    let cyl = Chart::cylindrical();
    let x7 = realize(7, &cyl).unwrap();
    assert_eq!(x7.to_string(), "∂theta");
    // and X9 does not rotate about the cylinder axis
    let x9 = realize(9, &cyl).unwrap();
    assert!(!x9.apply(&var(&cyl, "theta")).unwrap().is_one_const());
}

#[test]
fn pressure_translation_is_chart_independent() {
    for chart in [Chart::cylindrical(), Chart::spherical(), Chart::d_shift(&Expr::one())] {
        assert_eq!(realize(0, &chart).unwrap().to_string(), "∂P");
    }
}

#[test]
fn time_translation_in_shifted_chart() {
    let b = Expr::param("b");
    let ch = Chart::d_shift(&b);
    let x10 = realize(10, &ch).unwrap();
    assert!(x10.coeff("t").unwrap().is_one_const());
    // induced terms on the shifted velocity variables
    assert!(!x10.coeff("qbar").unwrap().is_zero_const() || !x10.coeff("varthetabar").unwrap().is_zero_const());
    for name in ["x", "y", "z", "u", "rho", "P"] {
        assert!(x10.coeff(name).unwrap().is_zero_const(), "{name}");
    }
}

fn charts() -> Vec<Arc<Chart>> {
    vec![
        Chart::cylindrical(),
        Chart::spherical(),
        Chart::d_shift(&Expr::zero()),
        Chart::d_shift(&Expr::one()),
        Chart::d_shift(&Expr::param("b")),
    ]
}

#[test]
fn pushforward_is_coherent() {
    let cfg = ZeroTest::default();
    for chart in charts() {
        let dom = chart.sample_box().range("b", 0.5, 2.0);
        for i in 0..12 {
            let f = realize(i, &d()).unwrap();
            for (k, r) in f.coherence_residuals(&chart).unwrap().iter().enumerate() {
                let v = r.test_zero(&dom, &cfg);
                assert!(v.is_zero(), "{} X{i} coord {k}: {v:?} {r}", chart.name());
            }
        }
    }
}

#[test]
fn chart_round_trip() {
    use rand::Rng;
    for chart in charts() {
        let dom = chart.sample_box().range("b", 0.5, 2.0);
        let names: Vec<String> = chart
            .coords()
            .iter()
            .map(|s| s.name().to_string())
            .chain(std::iter::once("b".to_string()))
            .collect();
        let mut rng = seeded(3);
        for _ in 0..50 {
            let p = dom.sample(&names, &mut rng);
            let err = chart.round_trip_error(&p).unwrap();
            assert!(err < 1e-10, "{}: {err}", chart.name());
        }
        let _: f64 = rng.gen();
    }
}

#[test]
fn pushed_commutators_match_table() {
    // brackets survive the change of chart
    let g = l12::<Rational>();
    for chart in [Chart::cylindrical(), Chart::d_shift(&Expr::one())] {
        for (i, j) in [(4, 10), (7, 8), (1, 11), (5, 7)] {
            let lhs = realize(i, &chart)
                .unwrap()
                .commutator(&realize(j, &chart).unwrap())
                .unwrap();
            let coeffs: Vec<Expr> = g.basis_bracket(i, j).iter().map(Expr::from).collect();
            let rhs = realize_combination(&coeffs, &chart).unwrap();
            let diff = lhs.add(&rhs.scale(&Expr::int(-1))).unwrap();
            let dom = chart.sample_box();
            for c in diff.coeffs() {
                assert!(c.test_zero(&dom, &ZeroTest::default()).is_zero(), "{i},{j}: {c}");
            }
        }
    }
    let _ = Symbol::var("t");
}
