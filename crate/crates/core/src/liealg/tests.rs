use proptest::prelude::*;
use rand::Rng;

use super::*;
use super::auto::{random_automorphisms, random_nonzero, random_q, random_vec};
use crate::rng::seeded;
use crate::{q, qi, Rational};

type Alg = LieAlgebra<Rational>;

fn x(i: usize) -> Vec<Rational> {
    let mut v = vec![qi(0); 12];
    v[i] = qi(1);
    v
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|p| -p).collect()
}

#[test]
fn table_brackets() {
    let g: Alg = l12();
    assert_eq!(g.bracket(&x(1), &x(9)).unwrap(), x(2));
    assert_eq!(g.bracket(&x(1), &x(2)).unwrap(), vec![qi(0); 12]);
    assert_eq!(g.bracket(&x(4), &x(10)).unwrap(), neg(&x(1)));
    assert_eq!(g.bracket(&x(7), &x(8)).unwrap(), neg(&x(9)));
    for i in 0..12 {
        assert_eq!(g.bracket(&x(Y), &x(i)).unwrap(), vec![qi(0); 12]);
    }
    assert!(matches!(
        g.bracket(&x(1), &[qi(1)]),
        Err(LieError::Dimension { expected: 12, got: 1 })
    ));
}

#[test]
fn jacobi_holds_and_detects_mutation() {
    let mut g: Alg = l12();
    assert_eq!(g.dim(), 12);
    assert!(g.jacobi_report().is_empty());
    g.set_constant(1, 9, 2, qi(-1));
    let bad = g.jacobi_report();
    assert!(bad.contains(&(1, 7, 9)), "{bad:?}");
    assert!(Alg::abelian(4).jacobi_report().is_empty());
}

#[test]
fn table_rejects_inconsistent_pairs() {
    let labels: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
    let r = Alg::from_brackets(
        labels,
        &[(0, 1, vec![qi(1), qi(0)]), (1, 0, vec![qi(1), qi(0)])],
    );
    assert_eq!(r, Err(LieError::Antisymmetry(1, 0)));
}

#[test]
fn closure_examples() {
    let g: Alg = l12();
    let s = Subalgebra::new(&g, vec![x(1), x(2), x(3), add(&x(Y), &x(4))]).unwrap();
    let ind = s.induced(&g).unwrap();
    assert_eq!(ind, Alg::abelian(4));

    // E1 = X1, E2 = X4, E3 = X7 + X10, E4 = Y + X10
    let s = Subalgebra::new(
        &g,
        vec![x(1), x(4), add(&x(7), &x(10)), add(&x(Y), &x(10))],
    )
    .unwrap();
    let ind = s.induced(&g).unwrap();
    let e1 = vec![qi(-1), qi(0), qi(0), qi(0)];
    assert_eq!(ind.basis_bracket(1, 2), &e1[..]);
    assert_eq!(ind.basis_bracket(1, 3), &e1[..]);
    assert_eq!(ind.basis_bracket(2, 3), &vec![qi(0); 4][..]);
    assert_eq!(ind.basis_bracket(0, 1), &vec![qi(0); 4][..]);

    let s = Subalgebra::new(&g, vec![x(8), x(10), x(1), x(2)]).unwrap();
    assert_eq!(s.induced(&g), Err(LieError::NotClosed(0, 2)));
    assert!(!s.is_closed(&g));

    assert_eq!(
        Subalgebra::new(&g, vec![x(1), x(1)]),
        Err(LieError::Dependent)
    );
}

#[test]
fn automorphism_table_rows() {
    let c: Vec<Rational> = (0..12).map(|i| qi(i as i64 + 1)).collect();
    let tau = q(1, 2);
    let out = Automorphism::TT { tau: tau.clone() }.apply(&c).unwrap();
    for i in 0..3 {
        assert_eq!(out[1 + i], &c[1 + i] + &tau * &c[4 + i]);
    }
    assert_eq!(out[10], &c[10] + &tau * &c[11]);
    assert_eq!(&out[4..10], &c[4..10]);
    assert_eq!(out[0], c[0]);

    let mut d = c.clone();
    for v in d[4..7].iter_mut() {
        *v = qi(0);
    }
    let out = Automorphism::I1.apply(&d).unwrap();
    for i in 1..4 {
        assert_eq!(out[i], -&d[i]);
    }
    assert_eq!(&out[4..], &d[4..]);

    assert_eq!(Automorphism::D { lambda: qi(1) }.apply(&c).unwrap(), c);
    let out = Automorphism::Outer { mu: qi(3) }.apply(&c).unwrap();
    assert_eq!(out[0], qi(3));
    assert_eq!(&out[1..], &c[1..]);
}

#[test]
fn automorphism_validation() {
    assert!(Automorphism::D { lambda: qi(0) }.validate().is_err());
    assert!(Automorphism::Outer { mu: qi(0) }.inverse().is_err());
    let r = rational_rotation(1, 2, 0, 0);
    assert!(Automorphism::R { r: r.clone() }.validate().is_ok());
    let mut bad = r;
    bad[0] = bad[0].clone().map(|v| -v);
    assert!(Automorphism::R { r: bad }.validate().is_err());
    let mut skew = rational_rotation(1, 0, 0, 0);
    skew[0][1] = q(1, 2);
    assert!(Automorphism::R { r: skew }.validate().is_err());
}

#[test]
fn automorphisms_are_homomorphisms() {
    let g: Alg = l12();
    let mut rng = seeded(7);
    for trial in 0..50u64 {
        for a in random_automorphisms(trial) {
            a.validate().unwrap();
            let (v, w) = (random_vec(&mut rng), random_vec(&mut rng));
            let lhs = g
                .bracket(&a.apply(&v).unwrap(), &a.apply(&w).unwrap())
                .unwrap();
            let rhs = a.apply(&g.bracket(&v, &w).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{a:?}");
            let back = a.inverse().unwrap().apply(&a.apply(&v).unwrap()).unwrap();
            assert_eq!(back, v, "{a:?}");
        }
    }
}

fn so3_plus_a1() -> Alg {
    // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2, e4 central
    let e = |k: usize| {
        let mut v = vec![qi(0); 4];
        v[k] = qi(1);
        v
    };
    let labels = (1..=4).map(|i| format!("E{i}")).collect();
    Alg::from_brackets(labels, &[(0, 1, e(2)), (1, 2, e(0)), (2, 0, e(1))]).unwrap()
}

fn heisenberg_plus_a1() -> Alg {
    let labels = (1..=4).map(|i| format!("E{i}")).collect();
    Alg::from_brackets(labels, &[(1, 2, vec![qi(1), qi(0), qi(0), qi(0)])]).unwrap()
}

#[test]
fn fingerprint_examples() {
    let f = fingerprint(&Alg::abelian(4));
    assert_eq!(f.derived_series, vec![4, 0]);
    assert_eq!(f.center_dim, 4);
    assert_eq!(f.killing_rank, 0);

    let f = fingerprint(&so3_plus_a1());
    assert_eq!(f.derived_series, vec![4, 3]);
    assert_eq!(f.center_dim, 1);
    assert_eq!(f.killing_rank, 3);
    assert_eq!(f.killing_signature, (0, 3, 1));

    let f = fingerprint(&heisenberg_plus_a1());
    assert_eq!(f.derived_series, vec![4, 1, 0]);
    assert_eq!(f.lower_central_series, vec![4, 1, 0]);
    assert_eq!(f.center_dim, 2);

    let g = fingerprint(&l12::<Rational>());
    assert_eq!(g.center_dim, 1);
    assert!(g.derived_series.iter().all(|&d| d <= 12));
}

#[test]
fn signature_needs_off_diagonal_pivot() {
    // sl(2): Killing form has zero diagonal in the (e, f, h) basis for e, f
    let labels = ["h", "e", "f"].iter().map(|s| s.to_string()).collect();
    let v = |a: i64, b: i64, c: i64| vec![qi(a), qi(b), qi(c)];
    let sl2 = Alg::from_brackets(
        labels,
        &[(0, 1, v(0, 2, 0)), (0, 2, v(0, 0, -2)), (1, 2, v(1, 0, 0))],
    )
    .unwrap();
    assert!(sl2.jacobi_report().is_empty());
    let f = fingerprint(&sl2);
    assert_eq!(f.killing_signature, (2, 1, 0));
}

fn random_invertible(rng: &mut crate::rng::Rng, n: usize) -> Vec<Vec<Rational>> {
    if n > 4 {
        // a few elementary operations keep the entries small
        let mut m = crate::linalg::identity::<Rational>(n);
        for _ in 0..6 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                let s = random_nonzero(rng);
                m[i] = m[i].iter().map(|x| x * &s).collect();
            } else {
                let s = qi(rng.gen_range(-2..3));
                let row: Vec<Rational> = m[j].iter().map(|x| x * &s).collect();
                m[i] = add(&m[i], &row);
            }
        }
        return m;
    }
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| qi(rng.gen_range(-3..4))).collect())
            .collect();
        if crate::linalg::rank(&m) == n {
            return m;
        }
    }
}

#[test]
fn fingerprint_survives_change_of_basis() {
    let algebras = [Alg::abelian(4), so3_plus_a1(), heisenberg_plus_a1(), l12()];
    for (k, alg) in algebras.iter().enumerate() {
        let f = fingerprint(alg);
        let mut rng = seeded(100 + k as u64);
        for _ in 0..20 {
            let m = random_invertible(&mut rng, alg.dim());
            let h = alg.change_basis(&m).unwrap();
            if alg.dim() <= 4 {
                assert!(h.jacobi_report().is_empty());
            }
            assert_eq!(fingerprint(&h), f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(seed in 0u64..10_000) {
        let g: Alg = l12();
        let mut rng = seeded(seed);
        let (u, v, w) = (random_vec(&mut rng), random_vec(&mut rng), random_vec(&mut rng));
        let s = random_q(&mut rng);
        prop_assert_eq!(g.bracket(&u, &v).unwrap(), neg(&g.bracket(&v, &u).unwrap()));
        let su: Vec<Rational> = u.iter().map(|x| x * &s).collect();
        let lhs = g.bracket(&add(&su, &w), &v).unwrap();
        let rhs: Vec<Rational> = g.bracket(&u, &v).unwrap().iter()
            .zip(g.bracket(&w, &v).unwrap())
            .map(|(a, b)| a * &s + b)
            .collect();
        prop_assert_eq!(lhs, rhs);
    }
}
