//! Exact symbolic expressions.
//!
//! Every [`Expr`] produced through the public constructors and operators is in
//! canonical form: sums are fully expanded into rational multiples of
//! monomials, monomials are products of integer powers of *atoms* sorted by a
//! total order, and the reductions `cos²α → 1 − sin²α` and `sqrt(g)² → g` are
//! applied. Atoms are symbols, `ln|·|`, `sin`, `cos`, `sqrt`, `atan2`, opaque
//! function applications, and negative powers of multi-term sums.
//!
//! Raw (non-canonical) trees can be built with [`Expr::raw`] for exercising
//! [`Expr::canonicalize`].

mod canon;
mod diff;
mod eval;
mod parse;
mod zero;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub use eval::{Assignment, EvalError, UnaryFn};
pub use parse::{ParseContext, ParseError};
pub use zero::{SampleBox, ZeroTest, ZeroVerdict};

pub(crate) use canon::Poly;

/// Whether a symbol is an independent/dependent variable or a constant
/// parameter. Differentiation only ever acts on variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Variable,
    Parameter,
}

/// Sign information used by the `sqrt` simplification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    Real,
    /// Strictly positive (radii, speeds, densities).
    Positive,
    /// An angle in `(0, π)`; its sine is positive.
    PolarAngle,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    kind: SymbolKind,
    domain: Domain,
}

impl Symbol {
    pub fn new(name: &str, kind: SymbolKind, domain: Domain) -> Self {
        Symbol {
            name: Arc::from(name),
            kind,
            domain,
        }
    }

    pub fn var(name: &str) -> Self {
        Self::new(name, SymbolKind::Variable, Domain::Real)
    }

    pub fn positive_var(name: &str) -> Self {
        Self::new(name, SymbolKind::Variable, Domain::Positive)
    }

    pub fn polar_var(name: &str) -> Self {
        Self::new(name, SymbolKind::Variable, Domain::PolarAngle)
    }

    pub fn param(name: &str) -> Self {
        Self::new(name, SymbolKind::Parameter, Domain::Real)
    }

    pub fn positive_param(name: &str) -> Self {
        Self::new(name, SymbolKind::Parameter, Domain::Positive)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_variable(&self) -> bool {
        self.kind == SymbolKind::Variable
    }

    pub fn to_expr(&self) -> Expr {
        Expr::symbol(self.clone())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Expression node. The variant order doubles as the canonical sort order of
/// factors (constants first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Const(Rational),
    Sym(Symbol),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, i64),
    LnAbs(Expr),
    Sin(Expr),
    Cos(Expr),
    Sqrt(Expr),
    Atan2(Expr, Expr),
    /// `f⁽ᵏ⁾(arg)` for an opaque unary function `f`.
    Func {
        name: Arc<str>,
        order: u32,
        arg: Expr,
    },
}

struct Inner {
    node: Node,
    canonical: bool,
}

/// Immutable, cheaply clonable expression handle.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.node == other.0.node
    }
}

impl Eq for Expr {}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.node.cmp(&other.0.node)
    }
}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.node.hash(state)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl Expr {
    fn from_node(node: Node, canonical: bool) -> Self {
        Expr(Arc::new(Inner { node, canonical }))
    }

    /// Builds a node without simplification.
    pub fn raw(node: Node) -> Self {
        let canonical = matches!(node, Node::Const(_) | Node::Sym(_));
        Self::from_node(node, canonical)
    }

    pub(crate) fn canonical_node(node: Node) -> Self {
        Self::from_node(node, true)
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_node(Node::Const(q), true)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::constant(Rational::new(n.into(), d.into()))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::from_node(Node::Sym(s), true)
    }

    pub fn var(name: &str) -> Self {
        Self::symbol(Symbol::var(name))
    }

    pub fn param(name: &str) -> Self {
        Self::symbol(Symbol::param(name))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Structural test on the canonical form.
    pub fn is_zero_const(&self) -> bool {
        self.as_const().is_some_and(|q| q.is_zero())
    }

    pub fn is_one_const(&self) -> bool {
        self.as_const().is_some_and(|q| q.is_one())
    }

    /// Returns the canonical form of `self`.
    pub fn canonicalize(&self) -> Expr {
        if self.is_canonical() {
            self.clone()
        } else {
            Poly::from_expr(self).to_expr()
        }
    }

    pub fn pow(&self, n: i64) -> Expr {
        Poly::from_expr(self).pow_int(n).to_expr()
    }

    pub fn recip(&self) -> Expr {
        self.pow(-1)
    }

    pub fn ln_abs(&self) -> Expr {
        canon::make_ln_abs(self.canonicalize())
    }

    pub fn sin(&self) -> Expr {
        canon::make_sin(self.canonicalize())
    }

    pub fn cos(&self) -> Expr {
        canon::make_cos(self.canonicalize())
    }

    pub fn sqrt(&self) -> Expr {
        canon::make_sqrt(self.canonicalize())
    }

    pub fn atan2(y: &Expr, x: &Expr) -> Expr {
        canon::make_atan2(y.canonicalize(), x.canonicalize())
    }

    /// Application of the `order`-th derivative of the opaque function `name`.
    pub fn func(name: &str, order: u32, arg: &Expr) -> Expr {
        canon::make_func(Arc::from(name), order, arg.canonicalize())
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut acc = Poly::zero();
        for e in items {
            acc.add_assign(&Poly::from_expr(&e));
        }
        acc.to_expr()
    }

    pub fn product<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut acc = Poly::one();
        for e in items {
            acc = acc.mul(&Poly::from_expr(&e));
        }
        acc.to_expr()
    }

    pub fn scale(&self, q: &Rational) -> Expr {
        Poly::from_expr(self).scale(q).to_expr()
    }

    /// Free symbols (variables and parameters), in canonical order.
    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Sym(s) => {
                out.insert(s.clone());
            }
            Node::Add(xs) | Node::Mul(xs) => xs.iter().for_each(|x| x.collect_symbols(out)),
            Node::Pow(b, _) => b.collect_symbols(out),
            Node::LnAbs(a) | Node::Sin(a) | Node::Cos(a) | Node::Sqrt(a) => a.collect_symbols(out),
            Node::Atan2(y, x) => {
                y.collect_symbols(out);
                x.collect_symbols(out);
            }
            Node::Func { arg, .. } => arg.collect_symbols(out),
        }
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Sym(t) => t == s,
            Node::Add(xs) | Node::Mul(xs) => xs.iter().any(|x| x.contains(s)),
            Node::Pow(b, _) => b.contains(s),
            Node::LnAbs(a) | Node::Sin(a) | Node::Cos(a) | Node::Sqrt(a) => a.contains(s),
            Node::Atan2(y, x) => y.contains(s) || x.contains(s),
            Node::Func { arg, .. } => arg.contains(s),
        }
    }

    /// Simultaneous substitution of symbols; the result is canonical.
    pub fn subst(&self, map: &[(Symbol, Expr)]) -> Expr {
        if map.is_empty() {
            return self.canonicalize();
        }
        self.subst_inner(map)
    }

    fn subst_inner(&self, map: &[(Symbol, Expr)]) -> Expr {
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Sym(s) => map
                .iter()
                .find(|(k, _)| k == s)
                .map(|(_, v)| v.canonicalize())
                .unwrap_or_else(|| self.clone()),
            Node::Add(xs) => Expr::sum(xs.iter().map(|x| x.subst_inner(map))),
            Node::Mul(xs) => Expr::product(xs.iter().map(|x| x.subst_inner(map))),
            Node::Pow(b, n) => b.subst_inner(map).pow(*n),
            Node::LnAbs(a) => a.subst_inner(map).ln_abs(),
            Node::Sin(a) => a.subst_inner(map).sin(),
            Node::Cos(a) => a.subst_inner(map).cos(),
            Node::Sqrt(a) => a.subst_inner(map).sqrt(),
            Node::Atan2(y, x) => Expr::atan2(&y.subst_inner(map), &x.subst_inner(map)),
            Node::Func { name, order, arg } => Expr::func(name, *order, &arg.subst_inner(map)),
        }
    }

    /// Replaces every opaque `name⁽ᵏ⁾(g)` by `images[k]` with `arg` bound to
    /// `g`. Missing orders leave the node untouched.
    pub fn subst_func(&self, name: &str, arg: &Symbol, images: &[Expr]) -> Expr {
        match self.node() {
            Node::Const(_) | Node::Sym(_) => self.clone(),
            Node::Add(xs) => Expr::sum(xs.iter().map(|x| x.subst_func(name, arg, images))),
            Node::Mul(xs) => Expr::product(xs.iter().map(|x| x.subst_func(name, arg, images))),
            Node::Pow(b, n) => b.subst_func(name, arg, images).pow(*n),
            Node::LnAbs(a) => a.subst_func(name, arg, images).ln_abs(),
            Node::Sin(a) => a.subst_func(name, arg, images).sin(),
            Node::Cos(a) => a.subst_func(name, arg, images).cos(),
            Node::Sqrt(a) => a.subst_func(name, arg, images).sqrt(),
            Node::Atan2(y, x) => Expr::atan2(
                &y.subst_func(name, arg, images),
                &x.subst_func(name, arg, images),
            ),
            Node::Func {
                name: fname,
                order,
                arg: inner,
            } => {
                let inner = inner.subst_func(name, arg, images);
                match images.get(*order as usize) {
                    Some(img) if &**fname == name => img.subst(&[(arg.clone(), inner)]),
                    _ => Expr::func(fname, *order, &inner),
                }
            }
        }
    }

    /// Rational coefficient/monomial pairs of the canonical form.
    pub fn terms(&self) -> Vec<(Rational, Expr)> {
        Poly::from_expr(self).term_pairs()
    }

    /// Coefficient of a linear symbol: `∂self/∂s` when `self` is affine in `s`.
    pub fn linear_coefficient(&self, s: &Symbol) -> Option<Expr> {
        let d = self.diff(s);
        if d.contains(s) {
            None
        } else {
            Some(d)
        }
    }

    /// Number of nodes in the tree; a rough size measure.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Const(_) | Node::Sym(_) => 0,
            Node::Add(xs) | Node::Mul(xs) => xs.iter().map(Expr::size).sum(),
            Node::Pow(b, _) => b.size(),
            Node::LnAbs(a) | Node::Sin(a) | Node::Cos(a) | Node::Sqrt(a) => a.size(),
            Node::Atan2(y, x) => y.size() + x.size(),
            Node::Func { arg, .. } => arg.size(),
        }
    }

    /// Deterministic S-expression serialization.
    pub fn to_sexpr(&self) -> String {
        let mut s = String::new();
        self.write_sexpr(&mut s);
        s
    }

    fn write_sexpr(&self, out: &mut String) {
        use std::fmt::Write;
        match self.node() {
            Node::Const(q) => {
                let _ = write!(out, "{q}");
            }
            Node::Sym(s) => out.push_str(s.name()),
            Node::Add(xs) | Node::Mul(xs) => {
                out.push_str(if matches!(self.node(), Node::Add(_)) {
                    "(+"
                } else {
                    "(*"
                });
                for x in xs {
                    out.push(' ');
                    x.write_sexpr(out);
                }
                out.push(')');
            }
            Node::Pow(b, n) => {
                out.push_str("(^ ");
                b.write_sexpr(out);
                let _ = write!(out, " {n})");
            }
            Node::LnAbs(a) | Node::Sin(a) | Node::Cos(a) | Node::Sqrt(a) => {
                let head = match self.node() {
                    Node::LnAbs(_) => "lnabs",
                    Node::Sin(_) => "sin",
                    Node::Cos(_) => "cos",
                    _ => "sqrt",
                };
                out.push('(');
                out.push_str(head);
                out.push(' ');
                a.write_sexpr(out);
                out.push(')');
            }
            Node::Atan2(y, x) => {
                out.push_str("(atan2 ");
                y.write_sexpr(out);
                out.push(' ');
                x.write_sexpr(out);
                out.push(')');
            }
            Node::Func { name, order, arg } => {
                let _ = write!(out, "(fn {name} {order} ");
                arg.write_sexpr(out);
                out.push(')');
            }
        }
    }

    /// Numeric value of a constant expression.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_const().and_then(|q| q.to_f64())
    }
}

fn needs_parens_in_product(e: &Expr) -> bool {
    match e.node() {
        Node::Add(_) => true,
        Node::Const(q) => !q.is_integer() || q.is_negative(),
        _ => false,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(q) => write!(f, "{q}"),
            Node::Sym(s) => write!(f, "{s}"),
            Node::Add(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    let s = x.to_string();
                    if i == 0 {
                        f.write_str(&s)?;
                    } else if let Some(rest) = s.strip_prefix('-') {
                        write!(f, " - {rest}")?;
                    } else {
                        write!(f, " + {s}")?;
                    }
                }
                Ok(())
            }
            Node::Mul(xs) => {
                let mut first = true;
                for x in xs {
                    if first {
                        if let Some(q) = x.as_const() {
                            if *q == -Rational::one() {
                                f.write_str("-")?;
                                continue;
                            }
                            if q.is_negative() || !q.is_integer() {
                                write!(f, "{q}")?;
                                first = false;
                                continue;
                            }
                        }
                    } else {
                        f.write_str("*")?;
                    }
                    first = false;
                    if needs_parens_in_product(x) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Node::Pow(b, n) => match b.node() {
                Node::Sym(_) | Node::Sin(_) | Node::Cos(_) | Node::Sqrt(_) | Node::LnAbs(_) => {
                    write!(f, "{b}^{n}")
                }
                _ => write!(f, "({b})^{n}"),
            },
            Node::LnAbs(a) => write!(f, "ln|{a}|"),
            Node::Sin(a) => write!(f, "sin({a})"),
            Node::Cos(a) => write!(f, "cos({a})"),
            Node::Sqrt(a) => write!(f, "sqrt({a})"),
            Node::Atan2(y, x) => write!(f, "atan2({y}, {x})"),
            Node::Func { name, order, arg } => {
                if *order == 0 {
                    write!(f, "{name}({arg})")
                } else {
                    write!(f, "{name}{}({arg})", "'".repeat(*order as usize))
                }
            }
        }
    }
}

impl From<Rational> for Expr {
    fn from(q: Rational) -> Self {
        Expr::constant(q)
    }
}

impl From<&Rational> for Expr {
    fn from(q: &Rational) -> Self {
        Expr::constant(q.clone())
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::symbol(s)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $body(&self, rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $body(self, &rhs)
            }
        }
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $body(self, rhs)
            }
        }
    };
}

fn add_impl(a: &Expr, b: &Expr) -> Expr {
    let mut p = Poly::from_expr(a);
    p.add_assign(&Poly::from_expr(b));
    p.to_expr()
}

fn sub_impl(a: &Expr, b: &Expr) -> Expr {
    let mut p = Poly::from_expr(a);
    p.add_assign(&Poly::from_expr(b).neg());
    p.to_expr()
}

fn mul_impl(a: &Expr, b: &Expr) -> Expr {
    Poly::from_expr(a).mul(&Poly::from_expr(b)).to_expr()
}

fn div_impl(a: &Expr, b: &Expr) -> Expr {
    Poly::from_expr(a)
        .mul(&Poly::from_expr(b).pow_int(-1))
        .to_expr()
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Poly::from_expr(&self).neg().to_expr()
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Poly::from_expr(self).neg().to_expr()
    }
}

impl Zero for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn is_zero(&self) -> bool {
        self.canonicalize().is_zero_const()
    }
}

impl One for Expr {
    fn one() -> Self {
        Expr::one()
    }
}
