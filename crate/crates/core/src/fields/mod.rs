//! Vector-field realization of `L12` and its transport between charts.

mod chart;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{Expr, SymbolKind};
use crate::liealg::{l12_labels, LieAlgebra};
use crate::linalg;
use crate::Rational;

pub use chart::{d_coords, Chart, ChartKind, D_NAMES};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("variable `{var}` is not a coordinate of chart {chart}")]
    ForeignVariable { var: String, chart: String },
    #[error("fields live on different charts ({0} vs {1})")]
    ChartMismatch(String, String),
    #[error("generator index {0} out of range")]
    Index(usize),
    #[error("field is not a constant-coefficient combination of the generators")]
    NotInSpan,
}

/// A first-order operator `Σ Fᵃ ∂ₐ` on a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    chart: Arc<Chart>,
    coeffs: Vec<Expr>,
}

impl VectorField {
    pub fn new(chart: Arc<Chart>, coeffs: Vec<Expr>) -> Self {
        assert_eq!(coeffs.len(), chart.coords().len());
        let coeffs = coeffs.iter().map(Expr::canonicalize).collect();
        VectorField { chart, coeffs }
    }

    pub fn zero(chart: Arc<Chart>) -> Self {
        let n = chart.coords().len();
        VectorField {
            chart,
            coeffs: vec![Expr::zero(); n],
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn coeffs(&self) -> &[Expr] {
        &self.coeffs
    }

    /// Coefficient of `∂_name`.
    pub fn coeff(&self, name: &str) -> Option<&Expr> {
        self.chart
            .coords()
            .iter()
            .position(|s| s.name() == name)
            .map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Expr::is_symbolic_zero)
    }

    /// `F(e) = Σ Fᵃ ∂e/∂xᵃ`.
    pub fn apply(&self, e: &Expr) -> Result<Expr, FieldError> {
        for s in e.free_symbols() {
            if s.kind() == SymbolKind::Variable && !self.chart.coords().contains(&s) {
                return Err(FieldError::ForeignVariable {
                    var: s.name().to_string(),
                    chart: self.chart.name().to_string(),
                });
            }
        }
        Ok(Expr::sum(
            self.chart
                .coords()
                .iter()
                .zip(&self.coeffs)
                .filter(|(_, c)| !c.is_zero_const())
                .map(|(x, c)| c * e.diff(x)),
        ))
    }

    fn same_chart(&self, other: &VectorField) -> Result<(), FieldError> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(FieldError::ChartMismatch(
                self.chart.name().to_string(),
                other.chart.name().to_string(),
            ))
        }
    }

    /// `[F, G]ᵃ = F(Gᵃ) − G(Fᵃ)`.
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField, FieldError> {
        self.same_chart(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(f, g)| Ok(self.apply(g)? - other.apply(f)?))
            .collect::<Result<Vec<_>, FieldError>>()?;
        Ok(VectorField::new(self.chart.clone(), coeffs))
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, FieldError> {
        self.same_chart(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(VectorField::new(self.chart.clone(), coeffs))
    }

    pub fn scale(&self, s: &Expr) -> VectorField {
        VectorField::new(self.chart.clone(), self.coeffs.iter().map(|c| s * c).collect())
    }

    /// Transports a Cartesian field: `F̃ᵃ = Σᵢ (Fⁱ∘ψ)·(∂Φᵃ/∂xⁱ∘ψ)`.
    pub fn pushforward(&self, target: &Arc<Chart>) -> Result<VectorField, FieldError> {
        if !self.chart.is_cartesian() {
            return Err(FieldError::ChartMismatch(
                self.chart.name().to_string(),
                "D".into(),
            ));
        }
        if target.is_cartesian() {
            return Ok(self.clone());
        }
        let map = target.pullback_map();
        let pulled: Vec<Expr> = self.coeffs.iter().map(|c| c.subst(&map)).collect();
        let jac = target.jacobian();
        let coeffs = jac
            .iter()
            .map(|row| {
                Expr::sum(
                    row.iter()
                        .zip(&pulled)
                        .filter(|(_, f)| !f.is_zero_const())
                        .map(|(j, f)| j * f),
                )
            })
            .collect();
        Ok(VectorField::new(target.clone(), coeffs))
    }

    /// Residuals `F̃(ψⁱ) − Fⁱ∘ψ` for every Cartesian coordinate, where
    /// `F̃` is this field pushed to `target`.
    pub fn coherence_residuals(&self, target: &Arc<Chart>) -> Result<Vec<Expr>, FieldError> {
        let pushed = self.pushforward(target)?;
        let map = target.pullback_map();
        target
            .to_d()
            .iter()
            .zip(&self.coeffs)
            .map(|(psi, f)| Ok(pushed.apply(psi)? - f.subst(&map)))
            .collect()
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .chart
            .coords()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero_const())
            .map(|(x, c)| {
                if c.is_one_const() {
                    format!("∂{x}")
                } else {
                    format!("({c})∂{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cartesian coefficients of generator `i` (0 = `Y`, `i` = `Xᵢ`).
fn cartesian(i: usize) -> Vec<Expr> {
    let d = d_coords();
    let v = |k: usize| d[k].to_expr();
    let (t, x, y, z, u, vv, w) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6));
    let mut c = vec![Expr::zero(); 9];
    let one = Expr::one;
    match i {
        0 => c[8] = one(),
        1 => c[1] = one(),
        2 => c[2] = one(),
        3 => c[3] = one(),
        4 => (c[1], c[4]) = (t, one()),
        5 => (c[2], c[5]) = (t, one()),
        6 => (c[3], c[6]) = (t, one()),
        7 => (c[3], c[2], c[6], c[5]) = (y, -z, vv, -w),
        8 => (c[1], c[3], c[4], c[6]) = (z, -x, w, -u),
        9 => (c[2], c[1], c[5], c[4]) = (x, -y, u, -vv),
        10 => c[0] = one(),
        11 => (c[0], c[1], c[2], c[3]) = (t, x, y, z),
        _ => unreachable!(),
    }
    c
}

/// Generator `i` as a vector field on `chart`.
pub fn realize(i: usize, chart: &Arc<Chart>) -> Result<VectorField, FieldError> {
    if i >= 12 {
        return Err(FieldError::Index(i));
    }
    let all = chart.realized.get_or_init(|| {
        let d = Chart::d();
        (0..12)
            .map(|k| {
                VectorField::new(d.clone(), cartesian(k))
                    .pushforward(chart)
                    .expect("D field")
                    .coeffs
            })
            .collect()
    });
    Ok(VectorField::new(chart.clone(), all[i].clone()))
}

/// `Σ cᵢ · realize(i)` for a coefficient vector over `(Y, X₁, …, X₁₁)`.
pub fn realize_combination(c: &[Expr], chart: &Arc<Chart>) -> Result<VectorField, FieldError> {
    let mut acc = VectorField::zero(chart.clone());
    for (i, ci) in c.iter().enumerate() {
        if !ci.is_zero_const() {
            acc = acc.add(&realize(i, chart)?.scale(ci))?;
        }
    }
    Ok(acc)
}

/// Coordinates of a Cartesian field in the generator basis, if it is a
/// constant-coefficient combination.
pub fn decompose(f: &VectorField) -> Result<Vec<Rational>, FieldError> {
    let d = Chart::d();
    if f.chart != d {
        return Err(FieldError::ChartMismatch(f.chart.name().to_string(), "D".into()));
    }
    // one row per (coordinate, monomial)
    let mut keys: BTreeMap<(usize, Expr), usize> = BTreeMap::new();
    let mut collect = |coeffs: &[Expr]| -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for (a, c) in coeffs.iter().enumerate() {
            for (q, mono) in c.terms() {
                let n = keys.len();
                let idx = *keys.entry((a, mono)).or_insert(n);
                out.push((idx, q));
            }
        }
        out
    };
    let gens: Vec<Vec<(usize, Rational)>> = (0..12).map(|k| collect(&cartesian(k))).collect();
    let target = collect(&f.coeffs);
    let n = keys.len();
    let dense = |sparse: &[(usize, Rational)]| {
        let mut v = vec![Rational::from_integer(0.into()); n];
        for (i, q) in sparse {
            v[*i] += q;
        }
        v
    };
    let basis: Vec<Vec<Rational>> = gens.iter().map(|g| dense(g)).collect();
    linalg::solve_combination(&basis, &dense(&target)).ok_or(FieldError::NotInSpan)
}

/// Structure constants computed from commutators of the Cartesian
/// realization.
pub fn realized_algebra() -> LieAlgebra<Rational> {
    let d = Chart::d();
    let fields: Vec<VectorField> = (0..12).map(|i| realize(i, &d).expect("index")).collect();
    let mut brackets = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            let c = fields[i].commutator(&fields[j]).expect("same chart");
            brackets.push((i, j, decompose(&c).expect("realization closes")));
        }
    }
    LieAlgebra::from_brackets(l12_labels(), &brackets).expect("commutators are antisymmetric")
}

/// Entries `(i, j, k, realized, keyed)` where the realized tensor differs
/// from `keyed`.
pub fn table_diff(keyed: &LieAlgebra<Rational>) -> Vec<(usize, usize, usize, Rational, Rational)> {
    let real = realized_algebra();
    let mut out = Vec::new();
    for i in 0..12 {
        for j in 0..12 {
            for k in 0..12 {
                let (a, b) = (real.constant(i, j, k), keyed.constant(i, j, k));
                if a != b {
                    out.push((i, j, k, a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
