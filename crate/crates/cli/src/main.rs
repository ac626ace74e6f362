use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gaslie::catalog::{self, get_entry, parse_rational, verify_catalog, verify_invariants, Params, VerifyConfig};
use gaslie::classify::classify_all;
use gaslie::expr::ZeroTest;
use gaslie::liealg::l12;
use gaslie::numerics::{trace, TraceSpec};
use gaslie::report::{algebra_report, bracket_table, solution_section, CatalogSection, ClassesSection, Report};
use gaslie::submodel::{affine_residuals, figure_constants, SolutionKind};
use gaslie::{Rational, RationalAlgebra};

#[derive(Parser)]
#[command(name = "gaslie", version, about = "Symmetry algebra, invariants and exact solutions for gas dynamics with P = f(rho) + S")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Comma-separated entry ids, or `all`.
    #[arg(long, global = true)]
    entries: Option<String>,
    /// Parameter overrides `k=v,...` (rational values).
    #[arg(long, global = true)]
    params: Option<String>,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Absolute tolerance for numeric zero tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_zero: f64,
    /// Relative singular-value cutoff for the invariant rank.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_rank: f64,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report destination (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi identity, table vs realization, automorphisms.
    VerifyAlgebra {
        /// Flip one structure constant `i,j,k` before checking.
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Annihilation and rank checks for catalog entries.
    VerifyInvariants { ids: Vec<String> },
    /// Change-of-basis checks and fingerprints.
    Classify { ids: Vec<String> },
    /// Symbolic identities of a solution family (or `all`).
    VerifySolution { kind: String },
    /// Integrate one particle path of a reduced family and export CSV.
    Trace {
        #[arg(long)]
        kind: String,
        /// Position at t = 0, `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        u0: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 3.0)]
        t1: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Constants `k0=..,m0=..,rho0=..`; defaults are all 1.
        #[arg(long)]
        constants: Option<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Every check plus the reference particle paths.
    Report,
}

struct Fail(u8, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn parse_kv(s: &str) -> Result<Vec<(String, String)>, Fail> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("expected k=v, got `{p}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn parse_params(s: &str) -> Result<Params, Fail> {
    parse_kv(s)?
        .into_iter()
        .map(|(k, v)| {
            let q: Rational = parse_rational(&v).ok_or_else(|| usage(format!("`{v}` is not rational")))?;
            Ok((k, q))
        })
        .collect()
}

fn parse_triple(s: &str) -> Result<[f64; 3], Fail> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| usage(format!("bad number `{p}`"))))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| usage("expected three comma-separated numbers"))
}

impl Cli {
    fn ids(&self, positional: &[String]) -> Result<Vec<&'static str>, Fail> {
        let mut raw: Vec<String> = positional.to_vec();
        if let Some(e) = &self.entries {
            raw.extend(e.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()));
        }
        let all = catalog::ids();
        if raw.is_empty() || raw.iter().any(|r| r == "all") {
            return Ok(all);
        }
        raw.iter()
            .map(|r| {
                all.iter()
                    .find(|id| *id == r)
                    .copied()
                    .ok_or_else(|| usage(format!("unknown entry id `{r}`")))
            })
            .collect()
    }

    fn zero_test(&self) -> ZeroTest {
        ZeroTest {
            tol: self.tol_zero,
            seed: self.seed,
            ..ZeroTest::default()
        }
    }

    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            zero: self.zero_test(),
            rank_tol: self.tol_rank,
            seed: self.seed,
            ..VerifyConfig::default()
        }
    }
}

fn emit(cli: &Cli, report: &Report, text: &str) -> Result<(), Fail> {
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => text.to_string(),
    };
    match &cli.out {
        Some(p) => std::fs::write(p, body).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Fail> {
    if !(cli.tol_zero > 0.0) || !(cli.tol_rank > 0.0) {
        return Err(usage("tolerances must be positive"));
    }
    let mut report = Report::new(cli.seed);
    let mut text = String::new();
    match &cli.command {
        Command::VerifyAlgebra { mutate } => {
            let mut g: RationalAlgebra = l12();
            if let Some(m) = mutate {
                let idx: Vec<usize> = m
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| usage(format!("bad index `{p}`"))))
                    .collect::<Result<_, _>>()?;
                let [i, j, k] = idx[..] else {
                    return Err(usage("--mutate expects i,j,k"));
                };
                if i >= 12 || j >= 12 || k >= 12 || i == j {
                    return Err(usage("--mutate indices out of range"));
                }
                let old = g.constant(i, j, k).clone();
                let new = if old == Rational::from_integer(0.into()) {
                    Rational::from_integer(1.into())
                } else {
                    -old
                };
                g.set_constant(i, j, k, new);
            }
            let a = algebra_report(&g, cli.seed, 50);
            for line in bracket_table(&g) {
                text.push_str(&line);
                text.push('\n');
            }
            text.push_str(&format!(
                "jacobi violations: {:?}\ntable differences: {}\n",
                a.jacobi_violations,
                a.table_diffs.len()
            ));
            if let Some(d) = a.table_diffs.first() {
                text.push_str(&format!("first difference: ({},{},{}) realized {} keyed {}\n", d.i, d.j, d.k, d.realized, d.keyed));
                eprintln!("first difference at ({},{},{}): realized {}, keyed {}", d.i, d.j, d.k, d.realized, d.keyed);
            }
            if let Some(t) = a.jacobi_violations.first() {
                eprintln!("Jacobi identity fails for triple {t:?}");
            }
            for c in &a.automorphisms {
                text.push_str(&format!("automorphism {}: {}\n", c.kind, if c.passed { "ok" } else { "FAIL" }));
            }
            report.algebra = Some(a);
        }
        Command::VerifyInvariants { ids } => {
            let ids = cli.ids(ids)?;
            let cfg = cli.verify_config();
            let section = match &cli.params {
                Some(p) => {
                    let p = parse_params(p)?;
                    if ids.len() != 1 {
                        return Err(usage("--params needs exactly one entry"));
                    }
                    let e = get_entry(ids[0], &p).map_err(|e| usage(e.to_string()))?;
                    let r = verify_invariants(&e, &cfg).map_err(|e| usage(e.to_string()))?;
                    let gaps = r.gaps();
                    let passed = r.passed;
                    CatalogSection::new(vec![catalog::EntryCampaign {
                        id: r.id.clone(),
                        symbolic: None,
                        samples: vec![r],
                        passed,
                        gaps,
                    }])
                }
                None => CatalogSection::new(verify_catalog(&ids, &cfg, cli.jobs).map_err(|e| usage(e.to_string()))?),
            };
            for e in &section.entries {
                let runs = e.symbolic.iter().chain(&e.samples);
                let zeros: usize = runs
                    .clone()
                    .map(|r| r.pairs.iter().filter(|p| p.verdict == gaslie::expr::ZeroVerdict::SymbolicZero).count())
                    .sum();
                let pairs: usize = runs.clone().map(|r| r.pairs.len()).sum();
                let ranks: Vec<usize> = runs.clone().filter_map(|r| r.rank).collect();
                text.push_str(&format!(
                    "{:<9} {} instances={} symbolic-zero={}/{} gaps={} rank={}\n",
                    e.id,
                    if e.passed { "PASS" } else { "FAIL" },
                    runs.count(),
                    zeros,
                    pairs,
                    e.gaps,
                    ranks.iter().min().zip(ranks.iter().max()).map(|(a, b)| if a == b { format!("{a}") } else { format!("{a}..{b}") }).unwrap_or_default()
                ));
            }
            report.catalog = Some(section);
        }
        Command::Classify { ids } => {
            let ids = cli.ids(ids)?;
            let rows = classify_all(&ids, &cli.zero_test(), cli.jobs).map_err(|e| usage(e.to_string()))?;
            let section = ClassesSection::new(rows);
            for r in &section.rows {
                text.push_str(&format!("{:<9} {:<22} {}\n", r.id, r.class, if r.passed { "PASS" } else { "FAIL" }));
                for c in r.failures().take(1) {
                    for d in &c.constant_diffs {
                        text.push_str(&format!(
                            "          [e{}, e{}] has e{} coefficient {} (listed {})\n",
                            d.pair[0], d.pair[1], d.k, d.induced, d.target
                        ));
                    }
                }
            }
            for (label, ids, same) in &section.consistency.groups {
                text.push_str(&format!("fingerprints {label}: {ids:?} {}\n", if *same { "agree" } else { "DIFFER" }));
            }
            for (a, b) in &section.consistency.info {
                text.push_str(&format!("INFO {a} and {b} share a fingerprint\n"));
            }
            report.classes = Some(section);
        }
        Command::VerifySolution { kind } => {
            let kinds: Vec<SolutionKind> = if kind == "all" {
                SolutionKind::ALL.to_vec()
            } else {
                vec![SolutionKind::parse(kind).ok_or_else(|| usage(format!("unknown solution kind `{kind}`")))?]
            };
            let sections: Vec<_> = kinds.iter().map(|k| solution_section(*k, &cli.zero_test())).collect();
            for s in &sections {
                text.push_str(&format!("{} {}\n", s.identities.kind.name(), if s.passed { "PASS" } else { "FAIL" }));
                for c in &s.identities.checks {
                    text.push_str(&format!("  {:<18} {}\n", c.name, c.verdict.label()));
                }
                for g in s.geometry.iter().flat_map(|g| &g.checks) {
                    text.push_str(&format!("  {:<44} {:.3e}\n", g.name, g.max_residual));
                }
            }
            report.solutions = Some(sections);
        }
        Command::Trace {
            kind,
            start,
            u0,
            t0,
            t1,
            h,
            constants,
            csv,
        } => {
            let kind = SolutionKind::parse(kind)
                .filter(|k| k.reduced())
                .ok_or_else(|| usage(format!("`{kind}` is not a reduced family")))?;
            if !(t1 > t0) {
                return Err(usage(format!("empty time range [{t0}, {t1}]")));
            }
            let mut consts = figure_constants();
            if let Some(c) = constants {
                for (k, v) in parse_kv(c)? {
                    if !["k0", "m0", "rho0"].contains(&k.as_str()) {
                        return Err(usage(format!("unknown constant `{k}`")));
                    }
                    let v: f64 = v.parse().map_err(|_| usage(format!("bad number `{v}`")))?;
                    consts.set(&k, v);
                }
            }
            let spec = TraceSpec {
                kind,
                start: parse_triple(start)?,
                u0: *u0,
                t0: *t0,
                t1: *t1,
                h: *h,
            };
            let r = trace(&spec, &consts).map_err(|e| usage(e.to_string()))?;
            if let Some(p) = csv {
                let f = File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                r.trajectory.write_csv(f).map_err(|e| usage(e.to_string()))?;
            }
            text.push_str(&format!(
                "{}: {} samples, end {:?}, max error vs closed form {:.3e}\n",
                r.trajectory.label,
                r.trajectory.len(),
                r.end,
                r.error.max_component
            ));
            report.traces = Some(vec![r]);
        }
        Command::Report => {
            let g: RationalAlgebra = l12();
            report.algebra = Some(algebra_report(&g, cli.seed, 50));
            let ids = cli.ids(&[])?;
            let cfg = cli.verify_config();
            report.catalog = Some(CatalogSection::new(
                verify_catalog(&ids, &cfg, cli.jobs).map_err(|e| usage(e.to_string()))?,
            ));
            report.classes = Some(ClassesSection::new(
                classify_all(&ids, &cli.zero_test(), cli.jobs).map_err(|e| usage(e.to_string()))?,
            ));
            report.solutions = Some(SolutionKind::ALL.iter().map(|k| solution_section(*k, &cli.zero_test())).collect());
            report.traces = Some(figure_traces()?);
            text = summary(&report);
        }
    }
    let passed = report.passed() && extra_checks(&report);
    if text.is_empty() {
        text = summary(&report);
    }
    emit(cli, &report, &text)?;
    Ok(passed)
}

/// Particle paths for the ellipsoid and fan plots.
fn figure_traces() -> Result<Vec<gaslie::numerics::TraceResult>, Fail> {
    let consts = figure_constants();
    let mut specs: Vec<TraceSpec> = [[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]
        .into_iter()
        .map(|start| TraceSpec {
            kind: SolutionKind::IsochoricReduced,
            start,
            u0: None,
            t0: 0.0,
            t1: 3.0,
            h: 1e-3,
        })
        .collect();
    for u0 in [0.0, 1.0, 2.0, 3.0] {
        specs.push(TraceSpec {
            kind: SolutionKind::NonisochoricReduced,
            start: [-2.0, 1.0, 1.0],
            u0: Some(u0),
            t0: 0.1,
            t1: 3.0,
            h: 1e-3,
        });
    }
    specs
        .iter()
        .map(|s| trace(s, &consts).map_err(|e| Fail(1, e.to_string())))
        .collect()
}

/// Fan of non-isochoric particles: shared `(y, z)` and `x` affine in `u₀`.
fn extra_checks(report: &Report) -> bool {
    let Some(traces) = &report.traces else { return true };
    let fan: Vec<[f64; 3]> = traces
        .iter()
        .filter(|t| t.spec.kind == SolutionKind::NonisochoricReduced)
        .map(|t| t.end)
        .collect();
    if fan.len() < 2 {
        return true;
    }
    let shared = fan.iter().all(|p| (p[1] - fan[0][1]).abs() < 1e-10 && (p[2] - fan[0][2]).abs() < 1e-10);
    let affine = affine_residuals(&fan.iter().map(|p| p[0]).collect::<Vec<_>>())
        .iter()
        .all(|r| r.abs() < 1e-10);
    shared && affine
}

fn summary(report: &Report) -> String {
    let mut out = String::new();
    let mark = |b: bool| if b { "PASS" } else { "FAIL" };
    if let Some(a) = &report.algebra {
        out.push_str(&format!("algebra     {}\n", mark(a.passed)));
    }
    if let Some(c) = &report.catalog {
        out.push_str(&format!(
            "catalog     {} ({} entries, {} simplifier gaps)\n",
            mark(c.passed),
            c.entries.len(),
            c.simplifier_gaps
        ));
    }
    if let Some(c) = &report.classes {
        let bad: Vec<&str> = c.rows.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
        out.push_str(&format!("classes     {} failing rows {bad:?}\n", mark(c.passed)));
    }
    if let Some(s) = &report.solutions {
        for x in s {
            out.push_str(&format!("solution    {} {}\n", x.identities.kind.name(), mark(x.passed)));
        }
    }
    if let Some(t) = &report.traces {
        for x in t {
            out.push_str(&format!("trace       {} max error {:.3e}\n", x.trajectory.label, x.error.max_component));
        }
    }
    out.push_str(&format!("overall     {} seed={}\n", mark(report.passed() && extra_checks(report)), report.seed));
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            let _ = std::io::stderr().flush();
            ExitCode::from(code)
        }
    }
}
