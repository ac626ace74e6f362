//! Acceptance gates. Prints one line per criterion; exits non-zero when a
//! gate departs from its recorded outcome.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use gaslie::catalog::{get_entry, ids, verify_catalog, verify_invariants, Params, PairStatus, VerifyConfig};
use gaslie::classify::{assignment, classify_all, classify_entry, verify_class};
use gaslie::expr::{ParseContext, ZeroTest, ZeroVerdict};
use gaslie::fields::table_diff;
use gaslie::liealg::{check_automorphisms, l12};
use gaslie::numerics::{compare_to_closed_form, integrate, observed_order, sphere_transport, trace, TraceSpec};
use gaslie::report::algebra_report;
use gaslie::submodel::{affine_residuals, figure_constants, flow_map, k0, m0, rho0, sample_box, t, verify_solution, y, Solution, SolutionKind};
use gaslie::{q, qi, Expr, Rational, RationalAlgebra};

const SEED: u64 = 0x5eed;
const ZERO_TOL: f64 = 1e-9;
const RANK_TOL: f64 = 1e-8;
const TRAJ_TOL: f64 = 1e-6;
const GEOM_TOL: f64 = 1e-10;
const VOLUME_TOL: f64 = 1e-12;

type Gate = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zero_test() -> ZeroTest {
    ZeroTest {
        tol: ZERO_TOL,
        seed: SEED,
        ..ZeroTest::default()
    }
}

fn algebra_gate() -> Gate {
    let start = Instant::now();
    let g: RationalAlgebra = l12();
    let bad = g.jacobi_report();
    let diffs = table_diff(&g);
    let secs = start.elapsed().as_secs_f64();
    ensure(bad.is_empty(), || format!("Jacobi fails at {:?}", bad[0]))?;
    ensure(diffs.is_empty(), || format!("table differs at {:?}", &diffs[0]))?;
    ensure(secs < 1.0, || format!("took {secs:.2} s"))?;
    Ok(format!("220 triples, 0 table differences, {secs:.3} s"))
}

fn automorphism_gate() -> Gate {
    let checks = check_automorphisms(&l12(), 50, SEED);
    let kinds: Vec<&str> = checks.iter().map(|c| c.kind.as_str()).collect();
    ensure(kinds == ["ST", "GT", "R", "TT", "D", "I1", "I2", "Outer"], || format!("maps {kinds:?}"))?;
    for c in &checks {
        ensure(c.passed && c.trials == 50, || format!("{c:?}"))?;
    }
    Ok(format!("{} maps x 50 vectors", checks.len()))
}

fn catalog_gate() -> Gate {
    let start = Instant::now();
    let cfg = VerifyConfig {
        zero: zero_test(),
        rank_tol: RANK_TOL,
        seed: SEED,
        ..VerifyConfig::default()
    };
    let all = ids();
    let camp = verify_catalog(&all, &cfg, 4).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let mut instances = 0;
    let mut gaps = 0;
    for e in &camp {
        for r in e.symbolic.iter().chain(&e.samples) {
            instances += 1;
            gaps += r.gaps();
            ensure(r.pairs.len() == 16, || format!("{}: {} pairs", r.id, r.pairs.len()))?;
            ensure(r.closed != Some(false), || format!("{} {:?} not closed", r.id, r.params))?;
            ensure(r.rank == Some(5), || format!("{} {:?} rank {:?}", r.id, r.params, r.rank))?;
            if let Some(p) = r.failures().next() {
                return Err(format!("{} {:?} pair {:?}", r.id, r.params, p));
            }
            for p in &r.pairs {
                if let ZeroVerdict::NumericZero { max_abs } = p.verdict {
                    ensure(max_abs < ZERO_TOL, || format!("{} residual {max_abs:e}", r.id))?;
                }
            }
        }
    }
    ensure(secs < 30.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} entries, {instances} instances, rank 5 everywhere, {gaps} simplifier gaps, {secs:.1} s",
        camp.len()
    ))
}

/// Rows whose listed relations do not match the induced brackets.
const KNOWN_ROW_FAILURES: &[&str] = &["4.21"];

fn classification_gate() -> Gate {
    let all = ids();
    let rows = classify_all(&all, &zero_test(), 4).map_err(|e| e.to_string())?;
    for id in ["4.56.i", "4.64.i", "4.74.i"] {
        let r = rows.iter().find(|r| r.id == id).unwrap();
        let signs: Vec<i64> = r.symbolic.iter().flat_map(|c| c.signs.values().copied()).collect();
        ensure(signs == [-1, 1] || signs == [1, -1], || format!("{id}: sign cases {signs:?}"))?;
    }
    let fp = |id: &str| &rows.iter().find(|r| r.id == id).unwrap().fingerprint;
    let groups: &[&[&str]] = &[
        &["4.1", "4.2"],
        &["4.44.ii", "4.77"],
        &["4.38", "4.42", "4.45", "4.54", "4.57", "4.65", "4.74.ii", "4.74.iii"],
    ];
    for g in groups {
        ensure(g.iter().all(|id| fp(id) == fp(g[0])), || format!("fingerprints differ in {g:?}"))?;
    }
    let failing: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    let mut witness = String::new();
    for r in rows.iter().filter(|r| !r.passed) {
        for c in r.failures().take(1) {
            for d in &c.constant_diffs {
                witness += &format!("{}: [e{},e{}] has e{} coefficient {} (listed {}); ", r.id, d.pair[0], d.pair[1], d.k, d.induced, d.target);
            }
        }
    }
    if failing.is_empty() {
        return Ok(format!("{} rows, fingerprint groups agree", rows.len()));
    }
    Err(format!("failing rows {failing:?}: {witness}"))
}

/// The known 4.21 outcome: exactly one missing bracket, fixed by e4 = E4 − E3.
fn heisenberg_row_outcome() -> Result<(), String> {
    let c = classify_entry("4.21", &zero_test()).map_err(|e| e.to_string())?;
    let d = &c.samples[0].constant_diffs;
    ensure(
        d.len() == 1 && d[0].pair == [2, 4] && d[0].k == 1 && d[0].induced == "1" && d[0].target == "0",
        || format!("{d:?}"),
    )?;
    let mut fixed = assignment("4.21").unwrap().clone();
    fixed.change[3] = "E4 - E3".into();
    let e = get_entry("4.21", &Params::new()).map_err(|e| e.to_string())?;
    let r = verify_class(&e, &fixed, &BTreeMap::new(), &zero_test()).map_err(|e| e.to_string())?;
    ensure(r.passed, || "corrected basis still fails".into())
}

fn submodel_gate() -> Gate {
    let mut n = 0;
    for kind in SolutionKind::ALL {
        let r = verify_solution(kind, &zero_test());
        for c in &r.checks {
            ensure(c.verdict == ZeroVerdict::SymbolicZero, || format!("{} {}: {:?}", kind.name(), c.name, c.verdict))?;
        }
        let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
        let mut need = vec!["reduced[4]", "full[4]", "vorticity[0]", "vorticity[1]", "vorticity[2]"];
        if kind.reduced() {
            need.push("jacobian");
        }
        for nm in need {
            ensure(names.contains(&nm), || format!("{} lacks {nm}", kind.name()))?;
        }
        n += r.checks.len();
    }
    Ok(format!("{n} identities symbolically zero"))
}

fn run_path(kind: SolutionKind, labels: [f64; 3], t0: f64, t1: f64, h: f64) -> Result<f64, String> {
    let s = Solution::new(kind);
    let fm = flow_map(kind).unwrap();
    let consts = figure_constants();
    let mut env = consts.clone().with("t", t0);
    for (l, v) in fm.labels.iter().zip(labels) {
        env.set(l.name(), v);
    }
    let x0 = fm.eval(&env).ok_or("flow map undefined")?;
    let tr = integrate(&s.velocity(), &consts, x0, t0, t1, h).map_err(|e| e.to_string())?;
    let e = compare_to_closed_form(&tr, &fm, &consts, labels).map_err(|e| e.to_string())?;
    Ok(if h == 1e-3 { e.max_component } else { e.endpoint_component })
}

fn trajectory_gate() -> Gate {
    let mut worst: f64 = 0.0;
    for labels in [[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [0.5, -1.0, 2.0]] {
        worst = worst.max(run_path(SolutionKind::IsochoricReduced, labels, 0.0, 3.0, 1e-3)?);
    }
    for u0 in [0.0, 1.0, 2.0, 3.0] {
        worst = worst.max(run_path(SolutionKind::NonisochoricReduced, [u0, 1.0, 1.0], 0.1, 3.0, 1e-3)?);
    }
    ensure(worst < TRAJ_TOL, || format!("max error {worst:e}"))?;
    let errs: Vec<(f64, f64)> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&h| Ok((h, run_path(SolutionKind::NonisochoricReduced, [1.0, 1.0, 1.0], 0.1, 3.0, h)?)))
        .collect::<Result<_, String>>()?;
    let p = observed_order(&errs);
    ensure((3.7..=4.3).contains(&p), || format!("order {p:.3} from {errs:?}"))?;
    Ok(format!("max error {worst:.2e}, observed order {p:.3}"))
}

fn figure_gate() -> Gate {
    let fm = flow_map(SolutionKind::IsochoricReduced).unwrap();
    let ball = 4.0 / 3.0 * PI;
    let mut worst: f64 = 0.0;
    for tt in [1.6, 2.0] {
        let r = sphere_transport(&fm, &figure_constants(), 1000, tt, SEED).ok_or("sphere transport failed")?;
        ensure(r.max_residual < GEOM_TOL, || format!("t={tt}: quadric residual {:e}", r.max_residual))?;
        ensure((r.volume_jacobian - ball).abs() < VOLUME_TOL, || format!("t={tt}: volume {}", r.volume_jacobian))?;
        ensure((r.volume_quadric - ball).abs() < VOLUME_TOL, || format!("t={tt}: quadric volume {}", r.volume_quadric))?;
        worst = worst.max(r.max_residual);
    }
    let ends: Vec<[f64; 3]> = [0.0, 1.0, 2.0, 3.0]
        .iter()
        .map(|&u0| {
            let spec = TraceSpec {
                kind: SolutionKind::NonisochoricReduced,
                start: [-2.0, 1.0, 1.0],
                u0: Some(u0),
                t0: 0.1,
                t1: 3.0,
                h: 1e-3,
            };
            trace(&spec, &figure_constants()).map(|r| r.end).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    for p in &ends {
        ensure((p[1] - ends[0][1]).abs() < GEOM_TOL && (p[2] - ends[0][2]).abs() < GEOM_TOL, || format!("(y,z) differ: {ends:?}"))?;
    }
    let res = affine_residuals(&ends.iter().map(|p| p[0]).collect::<Vec<_>>());
    let fit = res.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    ensure(fit < GEOM_TOL, || format!("x not affine in u0: {res:?}"))?;
    Ok(format!("quadric residual {worst:.1e}, volume 4π/3, fan fit residual {fit:.1e}"))
}

/// One deliberate error and the gate that must reject it.
struct Mutant {
    name: String,
    witness: Option<String>,
}

fn structure_mutant(i: usize, j: usize, k: usize) -> Mutant {
    let mut g: RationalAlgebra = l12();
    let old = g.constant(i, j, k).clone();
    let new = if old == qi(0) { qi(1) } else { -old };
    g.set_constant(i, j, k, new);
    let r = algebra_report(&g, SEED, 5);
    let witness = r.table_diffs.first().filter(|_| !r.passed).map(|d| {
        let jac = r.jacobi_violations.first().map(|t| format!(", Jacobi fails at {t:?}")).unwrap_or_default();
        format!("table ({},{},{}) realized {} keyed {}{jac}", d.i, d.j, d.k, d.realized, d.keyed)
    });
    Mutant {
        name: format!("structure constant c[{i}][{j}][{k}]"),
        witness,
    }
}

fn invariant_mutant(id: &str, params: &[(&str, Rational)], slot: usize, text: &str) -> Mutant {
    let p: Params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let mut e = get_entry(id, &p).unwrap();
    let ctx = ParseContext::new()
        .with_symbols(e.subst.iter().map(|(s, _)| s.clone()))
        .with_symbols(e.chart.coords().iter().cloned());
    e.invariants[slot] = ctx.parse(text).unwrap().subst(&e.subst);
    let r = verify_invariants(&e, &VerifyConfig::default()).unwrap();
    let witness = r.failures().next().filter(|_| !r.passed).map(|f| {
        assert_eq!(f.status, PairStatus::NonZero);
        format!("generator {} on invariant {}: {:?}", f.generator, f.invariant, f.verdict)
    });
    Mutant {
        name: format!("invariant sign {id}[{slot}] -> {text}"),
        witness,
    }
}

fn solution_mutant(kind: SolutionKind, what: &str, edit: impl Fn(&mut Solution)) -> Mutant {
    let mut s = Solution::new(kind);
    edit(&mut s);
    let res = s.reduced_residuals().into_iter().chain(s.full_residuals());
    let witness = res.enumerate().find_map(|(i, r)| match r.test_zero(&sample_box(), &zero_test()) {
        ZeroVerdict::NonZero { witness, value } => Some(format!("residual {i} = {value:.3e} at {witness:?}")),
        _ => None,
    });
    Mutant {
        name: format!("{} coefficient {what}", kind.name()),
        witness,
    }
}

fn relation_mutant() -> Mutant {
    let p: Params = [("a".to_string(), qi(0)), ("b".to_string(), qi(2))].into();
    let e = get_entry("4.56.i", &p).unwrap();
    let mut asg = assignment("4.56.i").unwrap().clone();
    asg.relations[0].value = "(-1/|b|)*e1".into();
    let r = verify_class(&e, &asg, &BTreeMap::new(), &zero_test()).unwrap();
    let witness = r.constant_diffs.first().filter(|_| !r.passed).map(|d| {
        format!("[e{},e{}] e{} induced {} listed {}", d.pair[0], d.pair[1], d.k, d.induced, d.target)
    });
    Mutant {
        name: "4.56.i relation sign".into(),
        witness,
    }
}

fn mutation_gate() -> Gate {
    let two = Expr::int(2);
    let mutants = vec![
        structure_mutant(1, 11, 1),
        structure_mutant(1, 8, 3),
        structure_mutant(7, 8, 9),
        structure_mutant(2, 3, 1),
        invariant_mutant("4.77", &[], 3, "P + u"),
        invariant_mutant("4.2", &[], 3, "P + t"),
        invariant_mutant("4.1", &[], 3, "P + ln|t|"),
        invariant_mutant("4.3", &[("a", qi(1)), ("b", q(1, 2))], 3, "u - P + a*theta - b*ln|t|"),
        solution_mutant(SolutionKind::IsochoricReduced, "of k0 y in u", |s| s.u = &s.u - &two * k0() * y()),
        solution_mutant(SolutionKind::IsochoricReduced, "of t in v", |s| s.v = &s.v + &two * k0() * t() * rho0().recip()),
        solution_mutant(SolutionKind::NonisochoricReduced, "of t in P1", |s| s.p1 = &s.p1 - &two * t() * rho0().recip()),
        solution_mutant(SolutionKind::NonisochoricReduced, "of t in w", |s| s.w = &s.w + &two * m0() * t() * rho0().recip()),
        relation_mutant(),
    ];
    let missed: Vec<&str> = mutants.iter().filter(|m| m.witness.is_none()).map(|m| m.name.as_str()).collect();
    ensure(missed.is_empty(), || format!("undetected: {missed:?}"))?;
    for m in &mutants {
        println!("    killed {}: {}", m.name, m.witness.as_deref().unwrap());
    }
    Ok(format!("{} mutants, all rejected with witnesses", mutants.len()))
}

fn main() -> ExitCode {
    // Criterion 4 is expected to fail on row 4.21 only.
    let gates: [(&str, fn() -> Gate, bool); 8] = [
        ("1 algebra", algebra_gate, true),
        ("2 automorphisms", automorphism_gate, true),
        ("3 catalog", catalog_gate, true),
        ("4 classification", classification_gate, false),
        ("5 submodel", submodel_gate, true),
        ("6 trajectories", trajectory_gate, true),
        ("7 figures", figure_gate, true),
        ("8 mutations", mutation_gate, true),
    ];
    let mut unexpected = 0;
    for (name, gate, expect_pass) in gates {
        let out = gate();
        match &out {
            Ok(msg) => println!("criterion {name}: PASS ({msg})"),
            Err(msg) => println!("criterion {name}: FAIL ({msg})"),
        }
        if out.is_ok() != expect_pass {
            unexpected += 1;
        }
    }
    let known = heisenberg_row_outcome();
    let listed = classify_all(KNOWN_ROW_FAILURES, &zero_test(), 1).map(|r| r.iter().all(|c| !c.passed));
    match (known, listed) {
        (Ok(()), Ok(true)) => println!("criterion 4 failure is the recorded 4.21 row; corrected basis e4 = E4 - E3 verifies"),
        (k, l) => {
            println!("criterion 4 failure differs from the recorded one: {k:?} {l:?}");
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} gate(s) departed from the recorded outcome");
        ExitCode::FAILURE
    }
}
