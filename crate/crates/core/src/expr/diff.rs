use super::{Expr, Node, Symbol};

impl Expr {
    /// Partial derivative with respect to `v`. Parameters and every other
    /// symbol are treated as constants; `ln` is `ln|·|` on each branch.
    pub fn diff(&self, v: &Symbol) -> Expr {
        let e = self.canonicalize();
        e.diff_canonical(v)
    }

    fn diff_canonical(&self, v: &Symbol) -> Expr {
        if !v.is_variable() || !self.contains(v) {
            return Expr::zero();
        }
        match self.node() {
            Node::Const(_) => Expr::zero(),
            Node::Sym(s) => {
                if s == v {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Add(xs) => Expr::sum(xs.iter().map(|x| x.diff_canonical(v))),
            Node::Mul(xs) => {
                let mut terms = Vec::new();
                for (i, x) in xs.iter().enumerate() {
                    let dx = x.diff_canonical(v);
                    if dx.is_zero_const() {
                        continue;
                    }
                    let others = xs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, y)| y.clone());
                    terms.push(Expr::product(std::iter::once(dx).chain(others)));
                }
                Expr::sum(terms)
            }
            Node::Pow(b, n) => {
                let db = b.diff_canonical(v);
                Expr::product([Expr::int(*n), b.pow(n - 1), db])
            }
            Node::LnAbs(a) => a.diff_canonical(v) * a.recip(),
            Node::Sin(a) => a.diff_canonical(v) * a.cos(),
            Node::Cos(a) => -(a.diff_canonical(v) * a.sin()),
            Node::Sqrt(a) => Expr::product([Expr::frac(1, 2), a.diff_canonical(v), self.recip()]),
            Node::Atan2(y, x) => {
                let num = x * y.diff_canonical(v) - y * x.diff_canonical(v);
                let den = x.pow(2) + y.pow(2);
                num * den.recip()
            }
            Node::Func { name, order, arg } => {
                Expr::func(name, order + 1, arg) * arg.diff_canonical(v)
            }
        }
    }
}
