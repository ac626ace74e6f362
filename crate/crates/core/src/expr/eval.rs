use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use super::{Expr, Node};

pub type UnaryFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("no numeric binding for derivative order {order} of `{name}`")]
    MissingFunction { name: String, order: u32 },
    #[error("domain violation in `{expr}` (symbols: {symbols})")]
    Domain { expr: String, symbols: String },
}

/// Numeric bindings for symbols and opaque functions.
#[derive(Clone, Default)]
pub struct Assignment {
    values: HashMap<String, f64>,
    funcs: HashMap<String, Vec<UnaryFn>>,
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.values.iter().collect();
        keys.sort_by(|a, b| a.0.cmp(b.0));
        f.debug_struct("Assignment")
            .field("values", &keys)
            .field("funcs", &self.funcs.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    /// Binds `name` and its derivatives: `derivs[k]` is `name⁽ᵏ⁾`.
    pub fn with_function(mut self, name: &str, derivs: Vec<UnaryFn>) -> Self {
        self.funcs.insert(name.to_string(), derivs);
        self
    }

    /// The sample state function `f(ρ) = ρ²` used for numeric checks.
    pub fn with_sample_state_function(self, name: &str) -> Self {
        self.with_function(
            name,
            vec![
                Arc::new(|r| r * r),
                Arc::new(|r| 2.0 * r),
                Arc::new(|_| 2.0),
                Arc::new(|_| 0.0),
            ],
        )
    }

    pub fn values(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

fn domain_error(e: &Expr) -> EvalError {
    let symbols: Vec<String> = e
        .free_symbols()
        .iter()
        .map(|s| s.name().to_string())
        .collect();
    EvalError::Domain {
        expr: e.to_string(),
        symbols: symbols.join(","),
    }
}

impl Expr {
    pub fn eval(&self, a: &Assignment) -> Result<f64, EvalError> {
        Ok(match self.node() {
            Node::Const(q) => q.to_f64().unwrap_or(f64::NAN),
            Node::Sym(s) => a
                .values
                .get(s.name())
                .copied()
                .ok_or_else(|| EvalError::Unbound(s.name().to_string()))?,
            Node::Add(xs) => {
                let mut acc = 0.0;
                for x in xs {
                    acc += x.eval(a)?;
                }
                acc
            }
            Node::Mul(xs) => {
                let mut acc = 1.0;
                for x in xs {
                    acc *= x.eval(a)?;
                }
                acc
            }
            Node::Pow(b, n) => {
                let bv = b.eval(a)?;
                if *n < 0 && bv == 0.0 {
                    return Err(domain_error(b));
                }
                bv.powi(*n as i32)
            }
            Node::LnAbs(x) => {
                let v = x.eval(a)?;
                if v == 0.0 {
                    return Err(domain_error(x));
                }
                v.abs().ln()
            }
            Node::Sin(x) => x.eval(a)?.sin(),
            Node::Cos(x) => x.eval(a)?.cos(),
            Node::Sqrt(x) => {
                let v = x.eval(a)?;
                if v < 0.0 {
                    return Err(domain_error(x));
                }
                v.sqrt()
            }
            Node::Atan2(y, x) => {
                let (yv, xv) = (y.eval(a)?, x.eval(a)?);
                if yv == 0.0 && xv == 0.0 {
                    return Err(domain_error(self));
                }
                yv.atan2(xv)
            }
            Node::Func { name, order, arg } => {
                let v = arg.eval(a)?;
                let f = a
                    .funcs
                    .get(&**name)
                    .and_then(|fs| fs.get(*order as usize))
                    .ok_or_else(|| EvalError::MissingFunction {
                        name: name.to_string(),
                        order: *order,
                    })?;
                f(v)
            }
        })
    }
}
