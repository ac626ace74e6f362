use super::*;
use crate::q;

fn params(kv: &[(&str, Rational)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[test]
fn catalog_loads() {
    assert_eq!(specs().len(), 28);
    for s in specs() {
        assert_eq!(s.basis.len(), 4, "{}", s.id);
        assert_eq!(s.invariants.len(), 4, "{}", s.id);
    }
    assert!(matches!(get_entry("9.99", &Params::new()), Err(CatalogError::UnknownId(_))));
}

#[test]
fn abelian_entry_is_exact() {
    let e = get_entry("4.77", &Params::new()).unwrap();
    let r = verify_invariants(&e, &VerifyConfig::default()).unwrap();
    assert_eq!(r.pairs.len(), 16);
    assert!(r.pairs.iter().all(|p| p.verdict == ZeroVerdict::SymbolicZero));
    assert_eq!(r.rank, Some(5));
    assert_eq!(r.closed, Some(true));
    assert!(r.passed);
}

#[test]
fn spherical_entry_rank() {
    let e = get_entry("4.2", &Params::new()).unwrap();
    let r = verify_invariants(&e, &VerifyConfig::default()).unwrap();
    assert_eq!(r.rank, Some(5));
    assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn instantiation_substitutes_parameters() {
    let e = get_entry("4.23.i", &params(&[("a", qi(1)), ("b", qi(0))])).unwrap();
    let c = &e.chart;
    let expect = c.coord("theta").unwrap().to_expr() + c.coord("vartheta").unwrap().to_expr()
        - c.coord("t").unwrap().to_expr();
    assert!((&e.invariants[0] - &expect).is_symbolic_zero(), "{}", e.invariants[0]);
}

#[test]
fn constraint_errors() {
    let bad = [
        ("4.23.i", params(&[("a", qi(0)), ("b", qi(1))])),
        ("4.23.i", params(&[("a", qi(1)), ("b", qi(1))])),
        ("4.23.i", params(&[("a", qi(1))])),
        ("4.38", params(&[("a", qi(1)), ("eps", qi(2))])),
        ("4.23.ii", params(&[("a", qi(1))])),
    ];
    for (id, p) in bad {
        assert!(matches!(get_entry(id, &p), Err(CatalogError::Constraint { .. })), "{id} {p:?}");
    }
    assert!(matches!(
        get_entry("4.77", &params(&[("a", qi(1))])),
        Err(CatalogError::UnknownParam { .. })
    ));
    assert!(get_entry("4.23.i", &params(&[("a", q(3, 5)), ("b", q(-4, 5))])).is_ok());
}

#[test]
fn mutated_invariant_is_rejected() {
    let mut e = get_entry("4.77", &Params::new()).unwrap();
    let c = e.chart.clone();
    e.invariants[3] = c.coord("P").unwrap().to_expr() + c.coord("u").unwrap().to_expr();
    let r = verify_invariants(&e, &VerifyConfig::default()).unwrap();
    assert!(!r.passed);
    let bad: Vec<_> = r.failures().collect();
    assert_eq!(bad.len(), 1);
    assert_eq!((bad[0].generator, bad[0].invariant), (3, 3));
}

#[test]
fn degenerate_family_has_rank_two() {
    let c = Chart::d();
    let t = c.coord("t").unwrap().to_expr();
    let funcs = vec![t.clone(), t.pow(2), t.pow(3), t.pow(4), c.coord("rho").unwrap().to_expr()];
    assert_eq!(independence_rank(&funcs, &c, &c.sample_box(), 10, 1e-8, 1), 2);
}

#[test]
fn grid_sizes() {
    let n = |id: &str| parameter_samples(spec(id).unwrap()).len();
    assert_eq!(n("4.77"), 1);
    assert_eq!(n("4.3"), 36);
    assert_eq!(n("4.42"), 6);
    assert_eq!(n("4.71.i"), 72);
    assert_eq!(n("4.23.i"), 2);
}

#[test]
fn symbolic_entry_uses_circle_parametrization() {
    let e = get_entry("4.23.i", &Params::new()).unwrap();
    let syms: Vec<String> = e.invariants[0]
        .free_symbols()
        .iter()
        .map(|s| s.name().to_string())
        .collect();
    assert!(syms.contains(&"s".to_string()));
    let r = verify_invariants(&e, &VerifyConfig::default()).unwrap();
    assert_eq!(r.mode, Mode::Symbolic);
    assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
}
