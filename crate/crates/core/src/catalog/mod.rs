//! The catalog of four-dimensional subalgebras and their invariants.
//!
//! Entries are read from `data/catalog.toml`. An entry is instantiated with
//! a (possibly partial) parameter assignment; unbound parameters stay
//! symbolic. A `p² + q² = 1` constraint with both parameters unbound is
//! replaced by the rational parametrization `p = (1−s²)/(1+s²)`,
//! `q = 2s/(1+s²)`.

mod grid;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{ParseContext, ParseError, SampleBox, Symbol, ZeroTest, ZeroVerdict};
use crate::fields::{realize_combination, Chart, FieldError, VectorField};
use crate::liealg::{l12, l12_labels, LieAlgebra, LieError, Subalgebra};
use crate::numerics::numeric_rank;
use crate::rng::split;
use crate::{qi, Expr, Rational};

pub use grid::{parameter_samples, GRID};

pub type Params = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("entry {id}: unknown parameter `{param}`")]
    UnknownParam { id: String, param: String },
    #[error("entry {id}: constraint violated: {msg}")]
    Constraint { id: String, msg: String },
    #[error("entry {id}: {source}")]
    Parse { id: String, source: ParseError },
    #[error("entry {id}: basis element `{text}` is not a linear combination of generators")]
    Basis { id: String, text: String },
    #[error("entry {id}: {source}")]
    Field { id: String, source: FieldError },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub id: String,
    pub chart: String,
    pub basis: Vec<String>,
    pub invariants: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub nonzero: Vec<String>,
    #[serde(default)]
    pub fixed: BTreeMap<String, String>,
    #[serde(default)]
    pub unit_circle: Option<[String; 2]>,
    #[serde(default)]
    pub discrete: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct CatalogFile {
    #[allow(dead_code)]
    version: u32,
    entry: Vec<EntrySpec>,
}

pub const CATALOG_TOML: &str = include_str!("../../data/catalog.toml");

/// All entry specifications in file order.
pub fn specs() -> &'static [EntrySpec] {
    static SPECS: OnceLock<Vec<EntrySpec>> = OnceLock::new();
    SPECS.get_or_init(|| {
        toml::from_str::<CatalogFile>(CATALOG_TOML)
            .expect("catalog data file is valid")
            .entry
    })
}

pub fn ids() -> Vec<&'static str> {
    specs().iter().map(|s| s.id.as_str()).collect()
}

pub fn spec(id: &str) -> Result<&'static EntrySpec, CatalogError> {
    specs()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| CatalogError::UnknownId(id.to_string()))
}

/// Parses `"3/5"`, `"-2"`, `"0.5"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let e = ParseContext::new().parse(s).ok()?;
    e.as_const().cloned()
}

impl EntrySpec {
    /// Every parameter name the entry mentions.
    pub fn all_params(&self) -> Vec<String> {
        let mut v: Vec<String> = self.params.clone();
        v.extend(self.fixed.keys().cloned());
        v.extend(self.discrete.keys().cloned());
        v.sort();
        v.dedup();
        v
    }

    pub fn chart_params(&self) -> Option<&str> {
        self.chart
            .strip_prefix("D-shift(")
            .and_then(|r| r.strip_suffix(')'))
    }
}

/// A fully or partially instantiated catalog entry.
#[derive(Debug, Clone)]
pub struct SubalgebraEntry {
    pub id: String,
    pub params: Params,
    pub chart: Arc<Chart>,
    /// Coefficient vectors over `(Y, X₁, …, X₁₁)`.
    pub basis: Vec<Vec<Expr>>,
    pub invariants: Vec<Expr>,
    pub notes: Vec<String>,
    /// Parameter bindings applied to the entry's expressions.
    pub subst: Vec<(Symbol, Expr)>,
}

fn generator_symbols() -> Vec<Symbol> {
    l12_labels().iter().map(|l| Symbol::var(l)).collect()
}

pub fn get_entry(id: &str, params: &Params) -> Result<SubalgebraEntry, CatalogError> {
    let sp = spec(id)?;
    let err = |msg: String| CatalogError::Constraint {
        id: id.to_string(),
        msg,
    };
    let known = sp.all_params();
    for k in params.keys() {
        if !known.contains(k) {
            return Err(CatalogError::UnknownParam {
                id: id.to_string(),
                param: k.clone(),
            });
        }
    }
    let mut bound = params.clone();
    for (k, v) in &sp.fixed {
        let v = parse_rational(v).expect("fixed values are rational");
        match bound.get(k) {
            Some(given) if *given != v => {
                return Err(err(format!("{k} = {v} for this case, got {given}")))
            }
            _ => {
                bound.insert(k.clone(), v);
            }
        }
    }
    for k in &sp.nonzero {
        if bound.get(k).is_some_and(Zero::is_zero) {
            return Err(err(format!("{k} ≠ 0")));
        }
    }
    for (k, allowed) in &sp.discrete {
        if let Some(v) = bound.get(k) {
            if !allowed.iter().any(|a| qi(*a) == *v) {
                return Err(err(format!("{k} ∈ {allowed:?}, got {v}")));
            }
        }
    }
    let mut subst: Vec<(Symbol, Expr)> = bound
        .iter()
        .map(|(k, v)| (Symbol::param(k), Expr::constant(v.clone())))
        .collect();
    if let Some([p, q]) = &sp.unit_circle {
        match (bound.get(p), bound.get(q)) {
            (Some(a), Some(b)) => {
                if a * a + b * b != qi(1) {
                    return Err(err(format!("{p}² + {q}² = 1, got {a}, {b}")));
                }
            }
            (None, None) => {
                let s = Expr::param("s");
                let den = (Expr::one() + &s * &s).recip();
                subst.push((Symbol::param(p), (Expr::one() - &s * &s) * &den));
                subst.push((Symbol::param(q), Expr::int(2) * &s * &den));
            }
            _ => return Err(err(format!("{p} and {q} must be given together"))),
        }
    }

    let parse_err = |source| CatalogError::Parse {
        id: id.to_string(),
        source,
    };
    let param_syms: Vec<Symbol> = known.iter().map(|k| Symbol::param(k)).collect();

    let chart = match sp.chart.as_str() {
        "D" => Chart::d(),
        "C" => Chart::cylindrical(),
        "S" => Chart::spherical(),
        _ => {
            let b = sp.chart_params().expect("chart name");
            let ctx = ParseContext::new().with_symbols(param_syms.clone());
            let b = ctx.parse(b).map_err(parse_err)?.subst(&subst);
            Chart::d_shift(&b)
        }
    };

    let gens = generator_symbols();
    let bctx = ParseContext::new()
        .with_symbols(param_syms.clone())
        .with_symbols(gens.clone());
    let mut basis = Vec::new();
    for text in &sp.basis {
        let e = bctx.parse(text).map_err(parse_err)?;
        let coeffs: Vec<Expr> = gens.iter().map(|g| e.diff(g)).collect();
        let rest = &e - Expr::sum(coeffs.iter().zip(&gens).map(|(c, g)| c * g.to_expr()));
        if coeffs.iter().any(|c| gens.iter().any(|g| c.contains(g))) || !rest.is_zero_const() {
            return Err(CatalogError::Basis {
                id: id.to_string(),
                text: text.clone(),
            });
        }
        basis.push(coeffs.iter().map(|c| c.subst(&subst)).collect());
    }

    let ictx = ParseContext::new()
        .with_symbols(param_syms)
        .with_symbols(chart.coords().iter().cloned());
    let invariants = sp
        .invariants
        .iter()
        .map(|t| Ok(ictx.parse(t).map_err(parse_err)?.subst(&subst)))
        .collect::<Result<Vec<_>, CatalogError>>()?;

    Ok(SubalgebraEntry {
        id: id.to_string(),
        params: bound,
        chart,
        basis,
        invariants,
        notes: sp.notes.clone(),
        subst,
    })
}

impl SubalgebraEntry {
    pub fn fields(&self) -> Result<Vec<VectorField>, CatalogError> {
        self.basis
            .iter()
            .map(|c| realize_combination(c, &self.chart))
            .collect::<Result<_, _>>()
            .map_err(|source| CatalogError::Field {
                id: self.id.clone(),
                source,
            })
    }

    /// The basis over the rationals, when no parameter is left symbolic.
    pub fn rational_basis(&self) -> Option<Vec<Vec<Rational>>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(|c| c.as_const().cloned()).collect())
            .collect()
    }

    /// Induced structure constants, when the basis is numeric.
    pub fn induced(&self) -> Option<Result<LieAlgebra<Rational>, LieError>> {
        let b = self.rational_basis()?;
        let g = l12::<Rational>();
        Some(Subalgebra::new(&g, b).and_then(|s| s.induced(&g)))
    }

    /// Sampling box: chart domain plus parameters.
    pub fn sample_box(&self) -> SampleBox {
        self.chart.sample_box().range("s", 0.3, 0.9)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairStatus {
    Zero,
    /// Not reduced symbolically, but zero at every sample.
    SimplifierGap,
    NonZero,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub generator: usize,
    pub invariant: usize,
    pub status: PairStatus,
    pub verdict: ZeroVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub mode: Mode,
    pub params: BTreeMap<String, String>,
    pub chart: String,
    /// `None` when the basis has symbolic coefficients.
    pub closed: Option<bool>,
    pub pairs: Vec<PairReport>,
    pub rank: Option<usize>,
    pub notes: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn gaps(&self) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.status == PairStatus::SimplifierGap)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(|p| p.status == PairStatus::NonZero)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub zero: ZeroTest,
    pub rank_points: usize,
    pub rank_tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            zero: ZeroTest::default(),
            rank_points: 10,
            rank_tol: 1e-8,
            seed: 0x5eed,
        }
    }
}

/// Maximum numeric rank of `∂fᵢ/∂xᵃ` over seeded points of `dom`.
pub fn independence_rank(
    funcs: &[Expr],
    chart: &Chart,
    dom: &SampleBox,
    points: usize,
    tol: f64,
    seed: u64,
) -> usize {
    let jac: Vec<Vec<Expr>> = funcs
        .iter()
        .map(|f| chart.coords().iter().map(|x| f.diff(x)).collect())
        .collect();
    let mut names: Vec<String> = chart.coords().iter().map(|s| s.name().to_string()).collect();
    for f in funcs {
        for s in f.free_symbols() {
            names.push(s.name().to_string());
        }
    }
    names.sort();
    names.dedup();
    let mut rng = split(seed, 1);
    let mut best = 0;
    let mut done = 0;
    for _ in 0..points * 20 {
        if done == points {
            break;
        }
        let p = dom.sample(&names, &mut rng);
        let m: Result<Vec<Vec<f64>>, _> = jac
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&p)).collect())
            .collect();
        let Ok(m) = m else { continue };
        if m.iter().flatten().any(|v| !v.is_finite()) {
            continue;
        }
        done += 1;
        best = best.max(numeric_rank(&m, tol));
        let _: u8 = rng.gen();
    }
    best
}

pub fn verify_invariants(
    entry: &SubalgebraEntry,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    let fields = entry.fields()?;
    let dom = entry.sample_box();
    let symbolic_params = entry
        .basis
        .iter()
        .flatten()
        .chain(&entry.invariants)
        .any(|e| e.free_symbols().iter().any(|s| !s.is_variable()));
    let mode = if symbolic_params {
        Mode::Symbolic
    } else {
        Mode::Sampled
    };
    let mut pairs = Vec::new();
    for (i, f) in fields.iter().enumerate() {
        for (j, inv) in entry.invariants.iter().enumerate() {
            let r = f.apply(inv).map_err(|source| CatalogError::Field {
                id: entry.id.clone(),
                source,
            })?;
            let verdict = r.test_zero(&dom, &cfg.zero);
            let status = match (&verdict, mode) {
                (ZeroVerdict::SymbolicZero, _) => PairStatus::Zero,
                (ZeroVerdict::NumericZero { .. }, Mode::Symbolic) => PairStatus::SimplifierGap,
                (ZeroVerdict::NumericZero { .. }, Mode::Sampled) => PairStatus::Zero,
                (ZeroVerdict::NonZero { .. }, _) => PairStatus::NonZero,
            };
            pairs.push(PairReport {
                generator: i,
                invariant: j,
                status,
                verdict,
            });
        }
    }
    let closed = entry.induced().map(|r| r.is_ok());
    let mut funcs = entry.invariants.clone();
    funcs.push(entry.chart.coord("rho").expect("rho").to_expr());
    let rank = independence_rank(&funcs, &entry.chart, &dom, cfg.rank_points, cfg.rank_tol, cfg.seed);
    let passed = closed != Some(false)
        && pairs.iter().all(|p| p.status != PairStatus::NonZero)
        && rank == 5;
    Ok(VerificationReport {
        id: entry.id.clone(),
        mode,
        params: entry
            .params
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect(),
        chart: entry.chart.name().to_string(),
        closed,
        pairs,
        rank: Some(rank),
        notes: entry.notes.clone(),
        passed,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// One entry checked symbolically and across its parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct EntryCampaign {
    pub id: String,
    pub symbolic: Option<VerificationReport>,
    pub samples: Vec<VerificationReport>,
    pub passed: bool,
    pub gaps: usize,
}

pub fn verify_entry(id: &str, cfg: &VerifyConfig) -> Result<EntryCampaign, CatalogError> {
    let sp = spec(id)?;
    let has_params = !sp.params.is_empty() || !sp.discrete.is_empty();
    let symbolic = if has_params {
        Some(verify_invariants(&get_entry(id, &Params::new())?, cfg)?)
    } else {
        None
    };
    let samples = parameter_samples(sp)
        .iter()
        .map(|p| verify_invariants(&get_entry(id, p)?, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = symbolic.iter().chain(&samples).all(|r| r.passed);
    let gaps = symbolic.iter().chain(&samples).map(|r| r.gaps()).sum();
    Ok(EntryCampaign {
        id: id.to_string(),
        symbolic,
        samples,
        passed,
        gaps,
    })
}

/// Verifies the given entries in parallel; output follows input order.
pub fn verify_catalog(
    ids: &[&str],
    cfg: &VerifyConfig,
    jobs: usize,
) -> Result<Vec<EntryCampaign>, CatalogError> {
    for id in ids {
        spec(id)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| ids.par_iter().map(|id| verify_entry(id, cfg)).collect())
}

#[cfg(test)]
mod tests;
