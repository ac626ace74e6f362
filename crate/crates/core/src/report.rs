//! The global JSON report.
//!
//! Sections not requested are `null`. Nothing time- or host-dependent is
//! serialized, so equal inputs give byte-identical output.

use serde::Serialize;

use crate::catalog::EntryCampaign;
use crate::classify::{fingerprint_consistency, ClassCampaign, ConsistencyReport};
use crate::fields::table_diff;
use crate::liealg::{check_automorphisms, AutomorphismCheck, LieAlgebra};
use crate::numerics::TraceResult;
use crate::submodel::{geometry_checks, figure_constants, verify_solution, GeometryReport, SolutionKind, SolutionReport};
use crate::expr::ZeroTest;
use crate::Rational;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub algebra: Option<AlgebraReport>,
    pub catalog: Option<CatalogSection>,
    pub classes: Option<ClassesSection>,
    pub solutions: Option<Vec<SolutionSection>>,
    pub traces: Option<Vec<TraceResult>>,
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Report {
            version: REPORT_VERSION,
            seed,
            algebra: None,
            catalog: None,
            classes: None,
            solutions: None,
            traces: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.algebra.as_ref().is_none_or(|a| a.passed)
            && self.catalog.as_ref().is_none_or(|c| c.passed)
            && self.classes.as_ref().is_none_or(|c| c.passed)
            && self
                .solutions
                .as_ref()
                .is_none_or(|s| s.iter().all(|x| x.passed))
            && self.traces.as_ref().is_none_or(|t| t.iter().all(|x| x.error.max_component < 1e-6))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableDiff {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub realized: String,
    pub keyed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub dimension: usize,
    pub jacobi_triples: usize,
    pub jacobi_violations: Vec<[usize; 3]>,
    pub table_diffs: Vec<TableDiff>,
    pub automorphisms: Vec<AutomorphismCheck>,
    pub passed: bool,
}

/// `c₀Y + c₁X₁ + …` with unit coefficients elided.
pub fn format_combination(labels: &[String], c: &[Rational]) -> String {
    let mut out = String::new();
    for (l, v) in labels.iter().zip(c) {
        if *v == Rational::from_integer(0.into()) {
            continue;
        }
        let neg = *v < Rational::from_integer(0.into());
        let abs = if neg { -v.clone() } else { v.clone() };
        let coeff = if abs == Rational::from_integer(1.into()) {
            String::new()
        } else {
            format!("{abs}·")
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        out.push_str(&coeff);
        out.push_str(l);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// All `n(n−1)/2` brackets `[Xᵢ, Xⱼ] = …`, `i < j`.
pub fn bracket_table(g: &LieAlgebra<Rational>) -> Vec<String> {
    let labels = g.labels().to_vec();
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let b = g.basis_bracket(i, j);
            out.push(format!("[{}, {}] = {}", labels[i], labels[j], format_combination(&labels, &b)));
        }
    }
    out
}

pub fn algebra_report(keyed: &LieAlgebra<Rational>, seed: u64, trials: usize) -> AlgebraReport {
    let n = keyed.dim();
    let jacobi_violations: Vec<[usize; 3]> = keyed.jacobi_report().into_iter().map(|(i, j, k)| [i, j, k]).collect();
    let table_diffs: Vec<TableDiff> = table_diff(keyed)
        .into_iter()
        .map(|(i, j, k, realized, keyed)| TableDiff {
            i,
            j,
            k,
            realized: realized.to_string(),
            keyed: keyed.to_string(),
        })
        .collect();
    let automorphisms = check_automorphisms(keyed, trials, seed);
    let passed =
        jacobi_violations.is_empty() && table_diffs.is_empty() && automorphisms.iter().all(|a| a.passed);
    AlgebraReport {
        dimension: n,
        jacobi_triples: n * (n - 1) * (n - 2) / 6,
        jacobi_violations,
        table_diffs,
        automorphisms,
        passed,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogSection {
    pub entries: Vec<EntryCampaign>,
    pub simplifier_gaps: usize,
    pub passed: bool,
}

impl CatalogSection {
    pub fn new(entries: Vec<EntryCampaign>) -> Self {
        let passed = entries.iter().all(|e| e.passed);
        let simplifier_gaps = entries.iter().map(|e| e.gaps).sum();
        CatalogSection {
            entries,
            simplifier_gaps,
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassesSection {
    pub rows: Vec<ClassCampaign>,
    pub consistency: ConsistencyReport,
    pub passed: bool,
}

impl ClassesSection {
    pub fn new(rows: Vec<ClassCampaign>) -> Self {
        let consistency = fingerprint_consistency(&rows);
        let passed = consistency.passed && rows.iter().all(|r| r.passed);
        ClassesSection {
            rows,
            consistency,
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionSection {
    pub identities: SolutionReport,
    pub geometry: Option<GeometryReport>,
    pub passed: bool,
}

pub fn solution_section(kind: SolutionKind, cfg: &ZeroTest) -> SolutionSection {
    let identities = verify_solution(kind, cfg);
    let geometry = geometry_checks(kind, &figure_constants());
    let passed = identities.passed && geometry.as_ref().is_none_or(|g| g.passed);
    SolutionSection {
        identities,
        geometry,
        passed,
    }
}
