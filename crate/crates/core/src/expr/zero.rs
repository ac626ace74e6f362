use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::{Assignment, Expr, Poly};
use crate::rng::seeded;

/// Outcome of a zero test.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum ZeroVerdict {
    SymbolicZero,
    NumericZero { max_abs: f64 },
    NonZero {
        witness: BTreeMap<String, f64>,
        value: f64,
    },
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroVerdict::NonZero { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ZeroVerdict::SymbolicZero => "SymbolicZero",
            ZeroVerdict::NumericZero { .. } => "NumericZero",
            ZeroVerdict::NonZero { .. } => "NonZero",
        }
    }
}

/// Sampling box for numeric zero tests: an interval per symbol name plus
/// fixed bindings (opaque functions, pinned values).
#[derive(Debug, Clone)]
pub struct SampleBox {
    ranges: BTreeMap<String, (f64, f64)>,
    default: (f64, f64),
    base: Assignment,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox {
            ranges: BTreeMap::new(),
            default: (0.5, 2.0),
            base: Assignment::new().with_sample_state_function("f"),
        }
    }
}

impl SampleBox {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn range(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ranges.insert(name.to_string(), (lo, hi));
        self
    }

    pub fn default_range(mut self, lo: f64, hi: f64) -> Self {
        self.default = (lo, hi);
        self
    }

    pub fn base(mut self, base: Assignment) -> Self {
        self.base = base;
        self
    }

    pub fn fixed(mut self, name: &str, value: f64) -> Self {
        self.base.set(name, value);
        self
    }

    pub fn assignment(&self) -> &Assignment {
        &self.base
    }

    /// Draws a point for the given symbol names.
    pub fn sample<R: Rng>(&self, names: &[String], rng: &mut R) -> Assignment {
        let mut a = self.base.clone();
        for n in names {
            if a.get(n).is_some() {
                continue;
            }
            let (lo, hi) = self.ranges.get(n).copied().unwrap_or(self.default);
            a.set(n, rng.gen_range(lo..hi));
        }
        a
    }
}

/// Zero-testing policy: symbolic first, then seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTest {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest {
            samples: 100,
            tol: 1e-9,
            seed: 0x5eed,
        }
    }
}

impl Expr {
    /// True when the canonical form, after clearing denominators of sums,
    /// is the zero polynomial.
    pub fn is_symbolic_zero(&self) -> bool {
        let p = Poly::from_expr(self);
        p.is_zero() || p.clear_sum_denominators().is_zero()
    }

    pub fn test_zero(&self, dom: &SampleBox, cfg: &ZeroTest) -> ZeroVerdict {
        if self.is_symbolic_zero() {
            return ZeroVerdict::SymbolicZero;
        }
        self.numeric_zero(dom, cfg)
    }

    /// The sampling half of [`Expr::test_zero`] on its own.
    pub fn numeric_zero(&self, dom: &SampleBox, cfg: &ZeroTest) -> ZeroVerdict {
        let names: Vec<String> = self
            .free_symbols()
            .iter()
            .map(|s| s.name().to_string())
            .collect();
        let mut rng = seeded(cfg.seed);
        let mut max_abs: f64 = 0.0;
        let mut good = 0;
        let mut attempts = 0;
        while good < cfg.samples && attempts < cfg.samples * 20 {
            attempts += 1;
            let point = dom.sample(&names, &mut rng);
            let value = match self.eval(&point) {
                Ok(v) if v.is_finite() => v,
                _ => continue,
            };
            good += 1;
            if value.abs() >= cfg.tol {
                let witness = names
                    .iter()
                    .filter_map(|n| point.get(n).map(|v| (n.clone(), v)))
                    .collect();
                return ZeroVerdict::NonZero { witness, value };
            }
            max_abs = max_abs.max(value.abs());
        }
        if good == 0 {
            return ZeroVerdict::NonZero {
                witness: BTreeMap::new(),
                value: f64::NAN,
            };
        }
        ZeroVerdict::NumericZero { max_abs }
    }
}
