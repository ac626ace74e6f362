//! Expanded normal form: a sum of rational multiples of monomials in atoms.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Domain, Expr, Node};
use crate::Rational;

/// Sorted list of `(atom, exponent)` with nonzero exponents.
pub(crate) type Mono = Vec<(Expr, i64)>;

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Poly {
    terms: BTreeMap<Mono, Rational>,
}

impl Poly {
    pub(crate) fn zero() -> Self {
        Poly::default()
    }

    pub(crate) fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub(crate) fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        Poly { terms }
    }

    fn single(mono: Mono, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(mono, q);
        }
        Poly { terms }
    }

    /// `atom^e` with reductions applied.
    pub(crate) fn atom_pow(atom: Expr, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        reduce_mono(vec![(atom, e)], Rational::one())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if there is exactly one.
    pub(crate) fn as_single(&self) -> Option<(&Mono, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub(crate) fn scale(&self, q: &Rational) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * q))
                .collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let merged = merge(m1, m2);
                let prod = reduce_mono(merged, c1 * c2);
                out.add_assign(&prod);
            }
        }
        out
    }

    pub(crate) fn pow_int(&self, n: i64) -> Poly {
        if n == 0 {
            return Poly::one();
        }
        if n > 0 {
            let mut acc = self.clone();
            for _ in 1..n {
                acc = acc.mul(self);
            }
            return acc;
        }
        if self.is_zero() {
            // Division by zero is kept as an opaque atom; evaluation reports it.
            return Poly::atom_pow(
                Expr::canonical_node(Node::Pow(Expr::zero(), n)),
                1,
            );
        }
        if let Some((m, c)) = self.as_single() {
            let inv: Mono = m.iter().map(|(a, e)| (a.clone(), e * n)).collect();
            let coef = rational_powi(c, n);
            return reduce_mono(sort_mono(inv), coef);
        }
        Poly::atom_pow(self.to_expr(), n)
    }

    pub(crate) fn term_pairs(&self) -> Vec<(Rational, Expr)> {
        self.terms
            .iter()
            .map(|(m, c)| (c.clone(), mono_to_expr(m, &Rational::one())))
            .collect()
    }

    pub(crate) fn to_expr(&self) -> Expr {
        match self.terms.len() {
            0 => Expr::zero(),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                mono_to_expr(m, c)
            }
            _ => Expr::canonical_node(Node::Add(
                self.terms.iter().map(|(m, c)| mono_to_expr(m, c)).collect(),
            )),
        }
    }

    pub(crate) fn from_expr(e: &Expr) -> Poly {
        match e.node() {
            Node::Const(q) => Poly::constant(q.clone()),
            Node::Add(xs) => {
                let mut acc = Poly::zero();
                for x in xs {
                    acc.add_assign(&Poly::from_expr(x));
                }
                acc
            }
            Node::Mul(xs) => {
                let mut acc = Poly::one();
                for x in xs {
                    acc = acc.mul(&Poly::from_expr(x));
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Node::Pow(b, n) => {
                if e.is_canonical() {
                    // Canonical powers are atoms: sums with n < 0, or 0^n.
                    Poly::atom_pow(b.clone(), *n).or_zero_pow(b, *n)
                } else {
                    Poly::from_expr(b).pow_int(*n)
                }
            }
            _ => {
                let atom = if e.is_canonical() {
                    e.clone()
                } else {
                    canonical_atom(e)
                };
                match atom.node() {
                    Node::Const(_) | Node::Add(_) | Node::Mul(_) | Node::Pow(..) => {
                        Poly::from_expr(&atom)
                    }
                    _ => Poly::atom_pow(atom, 1),
                }
            }
        }
    }

    fn or_zero_pow(self, b: &Expr, n: i64) -> Poly {
        if b.is_zero_const() {
            Poly::atom_pow(Expr::canonical_node(Node::Pow(b.clone(), n)), 1)
        } else {
            self
        }
    }

    /// Multiplies through by the largest negative powers of every sum atom,
    /// leaving a polynomial in the remaining atoms.
    pub(crate) fn clear_sum_denominators(&self) -> Poly {
        let mut worst: BTreeMap<Expr, i64> = BTreeMap::new();
        for m in self.terms.keys() {
            for (a, e) in m {
                if *e < 0 && matches!(a.node(), Node::Add(_)) {
                    let w = worst.entry(a.clone()).or_insert(0);
                    *w = (*w).min(*e);
                }
            }
        }
        if worst.is_empty() {
            return self.clone();
        }
        let factor: Mono = worst.into_iter().map(|(a, e)| (a, -e)).collect();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_assign(&reduce_mono(merge(m, &factor), c.clone()));
        }
        out
    }
}

fn rational_powi(q: &Rational, n: i64) -> Rational {
    let base = if n < 0 { q.recip() } else { q.clone() };
    let mut acc = Rational::one();
    for _ in 0..n.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn sort_mono(mut m: Mono) -> Mono {
    m.sort_by(|a, b| a.0.cmp(&b.0));
    m.retain(|(_, e)| *e != 0);
    m
}

fn merge(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Applies the rewriting rules to one monomial; the result may be a sum.
fn reduce_mono(m: Mono, coef: Rational) -> Poly {
    if coef.is_zero() {
        return Poly::zero();
    }
    for (idx, (atom, e)) in m.iter().enumerate() {
        let replacement = match atom.node() {
            Node::Cos(arg) if *e >= 2 => {
                // cos^e = cos^(e mod 2) (1 - sin^2)^(e div 2)
                let sin = make_sin(arg.clone());
                let one_minus = {
                    let mut p = Poly::one();
                    p.add_assign(&Poly::atom_pow(sin, 2).neg());
                    p
                };
                let mut r = one_minus.pow_int(e / 2);
                if e % 2 == 1 {
                    r = r.mul(&Poly::single(vec![(atom.clone(), 1)], Rational::one()));
                }
                Some(r)
            }
            Node::Sqrt(g) if e.abs() >= 2 => {
                let half = e.abs() / 2;
                let rem = e.abs() % 2;
                let sign = e.signum();
                let mut r = Poly::from_expr(g).pow_int(sign * half);
                if rem == 1 {
                    r = r.mul(&Poly::single(vec![(atom.clone(), sign)], Rational::one()));
                }
                Some(r)
            }
            Node::Add(_) if *e > 0 => Some(Poly::from_expr(atom).pow_int(*e)),
            _ => None,
        };
        if let Some(r) = replacement {
            let mut rest = m.clone();
            rest.remove(idx);
            let rest = reduce_mono(rest, coef);
            return rest.mul(&r);
        }
    }
    Poly::single(m, coef)
}

fn mono_to_expr(m: &Mono, c: &Rational) -> Expr {
    let mut factors = Vec::with_capacity(m.len() + 1);
    if !c.is_one() || m.is_empty() {
        factors.push(Expr::constant(c.clone()));
    }
    for (a, e) in m {
        if *e == 1 {
            factors.push(a.clone());
        } else {
            factors.push(Expr::canonical_node(Node::Pow(a.clone(), *e)));
        }
    }
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Expr::canonical_node(Node::Mul(factors))
    }
}

/// Canonicalizes the arguments of an atom-headed node and rebuilds it.
fn canonical_atom(e: &Expr) -> Expr {
    match e.node() {
        Node::Sym(_) => Expr::canonical_node(e.node().clone()),
        Node::LnAbs(a) => make_ln_abs(a.canonicalize()),
        Node::Sin(a) => make_sin(a.canonicalize()),
        Node::Cos(a) => make_cos(a.canonicalize()),
        Node::Sqrt(a) => make_sqrt(a.canonicalize()),
        Node::Atan2(y, x) => make_atan2(y.canonicalize(), x.canonicalize()),
        Node::Func { name, order, arg } => make_func(name.clone(), *order, arg.canonicalize()),
        _ => e.canonicalize(),
    }
}

pub(crate) fn make_ln_abs(a: Expr) -> Expr {
    if let Some(q) = a.as_const() {
        if q.abs().is_one() {
            return Expr::zero();
        }
    }
    Expr::canonical_node(Node::LnAbs(a))
}

pub(crate) fn make_sin(a: Expr) -> Expr {
    if a.is_zero_const() {
        return Expr::zero();
    }
    Expr::canonical_node(Node::Sin(a))
}

pub(crate) fn make_cos(a: Expr) -> Expr {
    if a.is_zero_const() {
        return Expr::one();
    }
    Expr::canonical_node(Node::Cos(a))
}

pub(crate) fn make_atan2(y: Expr, x: Expr) -> Expr {
    Expr::canonical_node(Node::Atan2(y, x))
}

pub(crate) fn make_func(name: Arc<str>, order: u32, arg: Expr) -> Expr {
    Expr::canonical_node(Node::Func { name, order, arg })
}

fn is_positive_atom(a: &Expr) -> bool {
    match a.node() {
        Node::Sym(s) => s.domain() == Domain::Positive,
        Node::Sin(arg) => arg
            .as_symbol()
            .is_some_and(|s| s.domain() == Domain::PolarAngle),
        Node::Sqrt(_) => true,
        _ => false,
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `sqrt(g)` for canonical `g`: pulls out positive atoms and square
/// rational factors of a single-term radicand.
pub(crate) fn make_sqrt(g: Expr) -> Expr {
    let p = Poly::from_expr(&g);
    if p.is_zero() {
        return Expr::zero();
    }
    let Some((m, c)) = p.as_single() else {
        return Expr::canonical_node(Node::Sqrt(g));
    };
    let mut outside: Mono = Vec::new();
    let mut inside: Mono = Vec::new();
    for (a, e) in m {
        if is_positive_atom(a) {
            let h = e.div_euclid(2);
            let r = e.rem_euclid(2);
            if h != 0 {
                outside.push((a.clone(), h));
            }
            if r != 0 {
                inside.push((a.clone(), r));
            }
        } else {
            inside.push((a.clone(), *e));
        }
    }
    let (out_c, in_c) = match (exact_sqrt(c.numer()), exact_sqrt(c.denom())) {
        (Some(n), Some(d)) if c.is_positive() => (Rational::new(n, d), Rational::one()),
        _ => (Rational::one(), c.clone()),
    };
    let in_poly = Poly::single(inside, in_c);
    let mut result = reduce_mono(outside, out_c);
    if in_poly.as_single().is_some_and(|(m, c)| m.is_empty() && c.is_one()) {
        return result.to_expr();
    }
    let radicand = in_poly.to_expr();
    result = result.mul(&Poly::single(
        vec![(Expr::canonical_node(Node::Sqrt(radicand)), 1)],
        Rational::one(),
    ));
    result.to_expr()
}
