//! Isomorphism classes of catalog entries.
//!
//! A row gives a change of basis `eᵢ = Σ Mᵢₖ Eₖ` and the nonzero brackets of
//! the `eᵢ`. A row is checked by forming `[eᵢ, eⱼ] − Σ cᵢⱼᵏ eₖ` in `L12` and
//! zero-testing every component. Parameters inside `|·|` are handled by
//! fixing their sign, so each sign case is a separate check.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, get_entry, parameter_samples, CatalogError, Params, SubalgebraEntry};
use crate::expr::{ParseContext, ParseError, Symbol, ZeroTest, ZeroVerdict};
use crate::liealg::{fingerprint, l12, Fingerprint, LieAlgebra};
use crate::{Expr, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassError {
    #[error("no class row for `{0}`")]
    UnknownId(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("row {id}: {source}")]
    Parse { id: String, source: ParseError },
    #[error("row {id}: relation {msg}")]
    Relations { id: String, msg: String },
    #[error("row {id}: change of basis is singular")]
    Singular { id: String },
    #[error("row {id}: sign of `{param}` undetermined")]
    Sign { id: String, param: String },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub pair: [usize; 2],
    pub value: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ClassAssignment {
    pub id: String,
    pub class: String,
    #[serde(default)]
    pub abs: Vec<String>,
    pub change: Vec<String>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Deserialize)]
struct ClassFile {
    #[allow(dead_code)]
    version: u32,
    row: Vec<ClassAssignment>,
}

pub const CLASSES_TOML: &str = include_str!("../../data/classes.toml");

pub fn assignments() -> &'static [ClassAssignment] {
    static ROWS: OnceLock<Vec<ClassAssignment>> = OnceLock::new();
    ROWS.get_or_init(|| {
        toml::from_str::<ClassFile>(CLASSES_TOML)
            .expect("class data file is valid")
            .row
    })
}

pub fn assignment(id: &str) -> Result<&'static ClassAssignment, ClassError> {
    assignments()
        .iter()
        .find(|a| a.id == id)
        .ok_or_else(|| ClassError::UnknownId(id.to_string()))
}

fn e_symbols(prefix: &str) -> Vec<Symbol> {
    (1..=4).map(|i| Symbol::var(&format!("{prefix}{i}"))).collect()
}

/// Coefficients of a linear form in `syms`, or `None` if it is not linear.
fn linear_coeffs(e: &Expr, syms: &[Symbol]) -> Option<Vec<Expr>> {
    let c: Vec<Expr> = syms.iter().map(|s| e.diff(s)).collect();
    let rest = e - Expr::sum(c.iter().zip(syms).map(|(c, s)| c * s.to_expr()));
    let linear = rest.is_symbolic_zero() && c.iter().all(|c| syms.iter().all(|s| !c.contains(s)));
    linear.then_some(c)
}

impl ClassAssignment {
    fn context(&self, signs: &BTreeMap<String, i64>) -> ParseContext {
        let spec = catalog::spec(&self.id).expect("row ids are catalog ids");
        let mut ctx = ParseContext::new().with_symbols(spec.all_params().iter().map(|p| Symbol::param(p)));
        for (k, s) in signs {
            ctx = ctx.with_sign(k, *s);
        }
        ctx
    }

    fn parse_linear(
        &self,
        texts: impl Iterator<Item = String>,
        basis: &[Symbol],
        signs: &BTreeMap<String, i64>,
    ) -> Result<Vec<Vec<Expr>>, ClassError> {
        let ctx = self.context(signs).with_symbols(basis.iter().cloned());
        texts
            .map(|t| {
                let e = ctx.parse(&t).map_err(|source| ClassError::Parse {
                    id: self.id.clone(),
                    source,
                })?;
                linear_coeffs(&e, basis).ok_or_else(|| ClassError::Relations {
                    id: self.id.clone(),
                    msg: format!("`{t}` is not linear"),
                })
            })
            .collect()
    }

    /// `M` with `eᵢ = Σ Mᵢₖ Eₖ`.
    pub fn change_matrix(&self, signs: &BTreeMap<String, i64>) -> Result<Vec<Vec<Expr>>, ClassError> {
        self.parse_linear(self.change.iter().cloned(), &e_symbols("E"), signs)
    }

    /// Target constants `c[i][j][k]` (zero-based), antisymmetrized.
    pub fn target(&self, signs: &BTreeMap<String, i64>) -> Result<Vec<Vec<Vec<Expr>>>, ClassError> {
        let mut c = vec![vec![vec![Expr::zero(); 4]; 4]; 4];
        let mut seen = Vec::new();
        let vals = self.parse_linear(self.relations.iter().map(|r| r.value.clone()), &e_symbols("e"), signs)?;
        for (r, v) in self.relations.iter().zip(vals) {
            let [i, j] = r.pair;
            let bad = |msg: &str| ClassError::Relations {
                id: self.id.clone(),
                msg: format!("[e{i}, e{j}]: {msg}"),
            };
            if !(1..=4).contains(&i) || !(1..=4).contains(&j) || i == j {
                return Err(bad("invalid pair"));
            }
            let key = (i.min(j), i.max(j));
            if seen.contains(&key) {
                return Err(bad("listed twice"));
            }
            seen.push(key);
            c[j - 1][i - 1] = v.iter().map(|x| -x.clone()).collect();
            c[i - 1][j - 1] = v;
        }
        Ok(c)
    }
}

fn det4(m: &[Vec<Expr>]) -> Expr {
    fn det(m: &[Vec<Expr>], rows: &[usize], col: usize) -> Expr {
        if rows.len() == 1 {
            return m[rows[0]][col].clone();
        }
        let mut acc = Expr::zero();
        for (k, &r) in rows.iter().enumerate() {
            if m[r][col].is_zero_const() {
                continue;
            }
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let term = &m[r][col] * det(m, &rest, col + 1);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    det(m, &[0, 1, 2, 3], 0)
}

/// One bracket component that failed to match.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub pair: [usize; 2],
    /// Index into `(Y, X₁, …, X₁₁)`.
    pub component: usize,
    pub residual: String,
    pub verdict: ZeroVerdict,
}

/// Exact induced constant differing from the target (numeric instances).
#[derive(Debug, Clone, Serialize)]
pub struct ConstantDiff {
    pub pair: [usize; 2],
    pub k: usize,
    pub induced: String,
    pub target: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassCheck {
    pub id: String,
    pub class: String,
    pub params: BTreeMap<String, String>,
    pub signs: BTreeMap<String, i64>,
    pub mismatches: Vec<Mismatch>,
    pub constant_diffs: Vec<ConstantDiff>,
    pub gaps: usize,
    pub passed: bool,
}

/// Checks one row against an instantiated entry. `signs` fixes the sign of
/// every unbound parameter listed under `abs`; bound ones take the sign of
/// their value.
pub fn verify_class(
    entry: &SubalgebraEntry,
    asg: &ClassAssignment,
    signs: &BTreeMap<String, i64>,
    cfg: &ZeroTest,
) -> Result<ClassCheck, ClassError> {
    if entry.id != asg.id {
        return Err(ClassError::UnknownId(entry.id.clone()));
    }
    let mut signs = signs.clone();
    let mut dom = entry.sample_box();
    for p in &asg.abs {
        match entry.params.get(p) {
            Some(v) => {
                let s = if v > &Rational::from_integer(0.into()) { 1 } else { -1 };
                signs.insert(p.clone(), s);
            }
            None => {
                let s = *signs.get(p).ok_or_else(|| ClassError::Sign {
                    id: asg.id.clone(),
                    param: p.clone(),
                })?;
                dom = if s > 0 { dom.range(p, 0.5, 2.0) } else { dom.range(p, -2.0, -0.5) };
            }
        }
    }
    let sub = |rows: Vec<Vec<Expr>>| -> Vec<Vec<Expr>> {
        rows.iter()
            .map(|r| r.iter().map(|x| x.subst(&entry.subst)).collect())
            .collect()
    };
    let m = sub(asg.change_matrix(&signs)?);
    let target: Vec<Vec<Vec<Expr>>> = asg.target(&signs)?.into_iter().map(sub).collect();

    if det4(&m).test_zero(&dom, cfg).is_zero() {
        return Err(ClassError::Singular { id: asg.id.clone() });
    }
    let e: Vec<Vec<Expr>> = m
        .iter()
        .map(|row| {
            (0..12)
                .map(|c| Expr::sum(row.iter().zip(&entry.basis).map(|(mk, b)| mk * &b[c])))
                .collect()
        })
        .collect();
    let g = l12::<Expr>();
    let mut mismatches = Vec::new();
    let mut gaps = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            let b = g.bracket(&e[i], &e[j]).expect("dimension 12");
            for (c, bc) in b.iter().enumerate() {
                let expect = Expr::sum((0..4).map(|k| &target[i][j][k] * &e[k][c]));
                let r = bc - expect;
                match r.test_zero(&dom, cfg) {
                    ZeroVerdict::SymbolicZero => {}
                    ZeroVerdict::NumericZero { .. } => gaps += 1,
                    v => mismatches.push(Mismatch {
                        pair: [i + 1, j + 1],
                        component: c,
                        residual: r.to_string(),
                        verdict: v,
                    }),
                }
            }
        }
    }
    let constant_diffs = exact_diffs(&e, &target);
    let passed = mismatches.is_empty() && constant_diffs.is_empty();
    Ok(ClassCheck {
        id: asg.id.clone(),
        class: asg.class.clone(),
        params: entry.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        signs,
        mismatches,
        constant_diffs,
        gaps,
        passed,
    })
}

/// Induced constants of the new basis compared with the target, when every
/// coefficient is a rational number.
fn exact_diffs(e: &[Vec<Expr>], target: &[Vec<Vec<Expr>>]) -> Vec<ConstantDiff> {
    let rat = |x: &Expr| x.as_const().cloned();
    let Some(rows) = e.iter().map(|r| r.iter().map(rat).collect()).collect::<Option<Vec<Vec<Rational>>>>()
    else {
        return Vec::new();
    };
    let Some(tgt) = target
        .iter()
        .flatten()
        .flatten()
        .map(rat)
        .collect::<Option<Vec<Rational>>>()
    else {
        return Vec::new();
    };
    let g = l12::<Rational>();
    let Ok(alg) = crate::liealg::Subalgebra::new(&g, rows).and_then(|s| s.induced(&g)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in 0..4 {
                let t = &tgt[i * 16 + j * 4 + k];
                let got = alg.constant(i, j, k);
                if got != t {
                    out.push(ConstantDiff {
                        pair: [i + 1, j + 1],
                        k: k + 1,
                        induced: got.to_string(),
                        target: t.to_string(),
                    });
                }
            }
        }
    }
    out
}

fn sign_cases(abs: &[String]) -> Vec<BTreeMap<String, i64>> {
    let mut out = vec![BTreeMap::new()];
    for p in abs {
        out = out
            .into_iter()
            .flat_map(|m| {
                [1, -1].map(|s| {
                    let mut m = m.clone();
                    m.insert(p.clone(), s);
                    m
                })
            })
            .collect();
    }
    out
}

/// A row checked with symbolic parameters (each sign case) and at every grid
/// sample of the entry.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCampaign {
    pub id: String,
    pub class: String,
    pub symbolic: Vec<ClassCheck>,
    pub samples: Vec<ClassCheck>,
    pub fingerprint: Fingerprint,
    pub passed: bool,
}

impl ClassCampaign {
    pub fn failures(&self) -> impl Iterator<Item = &ClassCheck> {
        self.symbolic.iter().chain(&self.samples).filter(|c| !c.passed)
    }
}

pub fn classify_entry(id: &str, cfg: &ZeroTest) -> Result<ClassCampaign, ClassError> {
    let asg = assignment(id)?;
    let spec = catalog::spec(id)?;
    let mut symbolic = Vec::new();
    let has_params = !spec.params.is_empty() || !spec.discrete.is_empty();
    if has_params {
        let entry = get_entry(id, &Params::new())?;
        for signs in sign_cases(&asg.abs) {
            symbolic.push(verify_class(&entry, asg, &signs, cfg)?);
        }
    }
    let grid = parameter_samples(spec);
    let mut samples = Vec::new();
    for p in &grid {
        let entry = get_entry(id, p)?;
        samples.push(verify_class(&entry, asg, &BTreeMap::new(), cfg)?);
    }
    let rep = get_entry(id, &grid[0])?;
    let alg: LieAlgebra<Rational> = rep
        .induced()
        .expect("grid samples are numeric")
        .map_err(|_| ClassError::Relations {
            id: id.to_string(),
            msg: "entry is not closed".into(),
        })?;
    let passed = symbolic.iter().chain(&samples).all(|c| c.passed);
    Ok(ClassCampaign {
        id: id.to_string(),
        class: asg.class.clone(),
        symbolic,
        samples,
        fingerprint: fingerprint(&alg),
        passed,
    })
}

pub fn classify_all(ids: &[&str], cfg: &ZeroTest, jobs: usize) -> Result<Vec<ClassCampaign>, ClassError> {
    for id in ids {
        assignment(id)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| ids.par_iter().map(|id| classify_entry(id, cfg)).collect())
}

/// Fingerprint agreement across rows.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    /// Label, member ids, whether all members share one fingerprint.
    pub groups: Vec<(String, Vec<String>, bool)>,
    /// Rows with different labels but equal fingerprints.
    pub info: Vec<(String, String)>,
    pub passed: bool,
}

/// Labels carrying continuous parameters are compared only within a row.
fn parametric(label: &str) -> bool {
    label.contains('|')
}

pub fn fingerprint_consistency(rows: &[ClassCampaign]) -> ConsistencyReport {
    let mut by_label: BTreeMap<&str, Vec<&ClassCampaign>> = BTreeMap::new();
    for r in rows {
        by_label.entry(&r.class).or_default().push(r);
    }
    let groups: Vec<(String, Vec<String>, bool)> = by_label
        .iter()
        .map(|(label, members)| {
            let same = parametric(label) || members.iter().all(|m| m.fingerprint == members[0].fingerprint);
            (
                label.to_string(),
                members.iter().map(|m| m.id.clone()).collect(),
                same,
            )
        })
        .collect();
    let mut info = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if a.class != b.class && a.fingerprint == b.fingerprint {
                info.push((a.id.clone(), b.id.clone()));
            }
        }
    }
    let passed = groups.iter().all(|g| g.2);
    ConsistencyReport { groups, info, passed }
}
