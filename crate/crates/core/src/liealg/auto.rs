//! Inner automorphisms of `L12` and the outer scaling of the `Y`
//! coefficient, acting on coefficient vectors `(c₀, c₁, …, c₁₁)`.
//!
//! Blocks: `c₁ = (c₁,c₂,c₃)`, `c₂ = (c₄,c₅,c₆)`, `c₃ = (c₇,c₈,c₉)`.

use serde::Serialize;

use rand::Rng;

use super::{LieAlgebra, LieError};
use crate::rng::seeded;
use crate::scalar::{Field, Scalar};
use crate::{q, qi, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Automorphism<S> {
    /// Space translation by `a`.
    ST { a: [S; 3] },
    /// Galilean boost by `b`.
    GT { b: [S; 3] },
    /// Rotation.
    R { r: [[S; 3]; 3] },
    /// Time translation.
    TT { tau: S },
    /// Dilation.
    D { lambda: S },
    /// Space reflection.
    I1,
    /// Time reflection.
    I2,
    /// `c₀ ↦ μc₀`.
    Outer { mu: S },
}

fn block<S: Clone>(c: &[S], k: usize) -> [S; 3] {
    let s = 1 + 3 * k;
    [c[s].clone(), c[s + 1].clone(), c[s + 2].clone()]
}

fn put<S>(c: &mut [S], k: usize, v: [S; 3]) {
    let s = 1 + 3 * k;
    for (i, x) in v.into_iter().enumerate() {
        c[s + i] = x;
    }
}

fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn axpy<S: Scalar>(x: &[S; 3], s: &S, y: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| x[i].clone() + s.clone() * y[i].clone())
}

fn mat_vec<S: Scalar>(r: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| {
        (0..3).fold(S::zero(), |acc, j| acc + r[i][j].clone() * v[j].clone())
    })
}

fn transpose<S: Clone>(r: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| r[j][i].clone()))
}

fn det3<S: Scalar>(r: &[[S; 3]; 3]) -> S {
    let m = |i: usize, j: usize| r[i][j].clone();
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

impl<S: Scalar> Automorphism<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Automorphism::ST { .. } => "ST",
            Automorphism::GT { .. } => "GT",
            Automorphism::R { .. } => "R",
            Automorphism::TT { .. } => "TT",
            Automorphism::D { .. } => "D",
            Automorphism::I1 => "I1",
            Automorphism::I2 => "I2",
            Automorphism::Outer { .. } => "Outer",
        }
    }

    pub fn apply(&self, c: &[S]) -> Result<Vec<S>, LieError> {
        if c.len() != 12 {
            return Err(LieError::Dimension {
                expected: 12,
                got: c.len(),
            });
        }
        let mut out = c.to_vec();
        let (c1, c2, c3) = (block(c, 0), block(c, 1), block(c, 2));
        let (c10, c11) = (c[10].clone(), c[11].clone());
        let neg3 = |v: [S; 3]| v.map(|x| -x);
        match self {
            Automorphism::ST { a } => {
                let t = axpy(&c1, &c11, a);
                let ax = cross(a, &c3);
                put(&mut out, 0, std::array::from_fn(|i| t[i].clone() - ax[i].clone()));
            }
            Automorphism::GT { b } => {
                put(&mut out, 0, axpy(&c1, &-c10, b));
                let bx = cross(b, &c3);
                put(&mut out, 1, std::array::from_fn(|i| c2[i].clone() - bx[i].clone()));
            }
            Automorphism::R { r } => {
                put(&mut out, 0, mat_vec(r, &c1));
                put(&mut out, 1, mat_vec(r, &c2));
                put(&mut out, 2, mat_vec(r, &c3));
            }
            Automorphism::TT { tau } => {
                put(&mut out, 0, axpy(&c1, tau, &c2));
                out[10] = c10 + tau.clone() * c11;
            }
            Automorphism::D { lambda } => {
                put(&mut out, 0, c1.map(|x| lambda.clone() * x));
                out[10] = lambda.clone() * c10;
            }
            Automorphism::I1 => {
                put(&mut out, 0, neg3(c1));
                put(&mut out, 1, neg3(c2));
            }
            Automorphism::I2 => {
                put(&mut out, 1, neg3(c2));
                out[10] = -c10;
            }
            Automorphism::Outer { mu } => {
                out[0] = mu.clone() * c[0].clone();
            }
        }
        Ok(out)
    }
}

impl<S: Field> Automorphism<S> {
    /// Rejects zero scalings and non-rotations.
    pub fn validate(&self) -> Result<(), LieError> {
        match self {
            Automorphism::D { lambda: s } | Automorphism::Outer { mu: s } if s.is_negligible() => {
                Err(LieError::InvalidAutomorphism("zero scaling".into()))
            }
            Automorphism::R { r } => {
                for i in 0..3 {
                    for j in 0..3 {
                        let dot = (0..3).fold(S::zero(), |acc, k| {
                            acc + r[i][k].clone() * r[j][k].clone()
                        });
                        let target = if i == j { S::one() } else { S::zero() };
                        if !(dot - target).is_negligible() {
                            return Err(LieError::InvalidAutomorphism(
                                "rotation matrix is not orthogonal".into(),
                            ));
                        }
                    }
                }
                if !(det3(r) - S::one()).is_negligible() {
                    return Err(LieError::InvalidAutomorphism(
                        "rotation matrix has determinant -1".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn inverse(&self) -> Result<Self, LieError> {
        self.validate()?;
        let neg = |v: &[S; 3]| v.clone().map(|x| -x);
        Ok(match self {
            Automorphism::ST { a } => Automorphism::ST { a: neg(a) },
            Automorphism::GT { b } => Automorphism::GT { b: neg(b) },
            Automorphism::R { r } => Automorphism::R { r: transpose(r) },
            Automorphism::TT { tau } => Automorphism::TT { tau: -tau.clone() },
            Automorphism::D { lambda } => Automorphism::D {
                lambda: S::one() / lambda.clone(),
            },
            Automorphism::I1 => Automorphism::I1,
            Automorphism::I2 => Automorphism::I2,
            Automorphism::Outer { mu } => Automorphism::Outer {
                mu: S::one() / mu.clone(),
            },
        })
    }
}

/// Rotation matrix of the quaternion `(a, b, c, d)`, exact over the
/// rationals. Panics on the zero quaternion.
pub fn rational_rotation(a: i64, b: i64, c: i64, d: i64) -> [[Rational; 3]; 3] {
    let n = a * a + b * b + c * c + d * d;
    assert!(n != 0, "zero quaternion");
    let raw = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ];
    raw.map(|row| row.map(|x| qi(x) / qi(n)))
}

/// Small random rational `n/d`, `|n| ≤ 9`, `1 ≤ d ≤ 4`.
pub fn random_q<R: Rng>(rng: &mut R) -> Rational {
    q(rng.gen_range(-9..10), rng.gen_range(1..5))
}

pub fn random_vec<R: Rng>(rng: &mut R) -> Vec<Rational> {
    (0..12).map(|_| random_q(rng)).collect()
}

pub fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let v = random_q(rng);
        if v != qi(0) {
            return v;
        }
    }
}

/// One sample of every automorphism kind.
pub fn random_automorphisms(seed: u64) -> Vec<Automorphism<Rational>> {
    let mut rng = seeded(seed);
    let r3 = |rng: &mut crate::rng::Rng| [random_q(rng), random_q(rng), random_q(rng)];
    let quat: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..4));
    let quat = if quat == [0; 4] { [1, 1, 1, 1] } else { quat };
    vec![
        Automorphism::ST { a: r3(&mut rng) },
        Automorphism::GT { b: r3(&mut rng) },
        Automorphism::R {
            r: rational_rotation(quat[0], quat[1], quat[2], quat[3]),
        },
        Automorphism::TT {
            tau: random_q(&mut rng),
        },
        Automorphism::D {
            lambda: random_nonzero(&mut rng),
        },
        Automorphism::I1,
        Automorphism::I2,
        Automorphism::Outer {
            mu: random_nonzero(&mut rng),
        },
    ]
}


/// Outcome of checking one automorphism kind on random vectors.
#[derive(Debug, Clone, Serialize)]
pub struct AutomorphismCheck {
    pub kind: String,
    pub trials: usize,
    /// Trial index of the first failure of `φ[v,w] = [φv,φw]`.
    pub homomorphism_failure: Option<usize>,
    /// Trial index of the first failure of `φ⁻¹φv = v`.
    pub inverse_failure: Option<usize>,
    pub passed: bool,
}

/// Checks each kind on `trials` fresh samples and random vector pairs.
pub fn check_automorphisms(g: &LieAlgebra<Rational>, trials: usize, seed: u64) -> Vec<AutomorphismCheck> {
    let mut rng = seeded(seed);
    let kinds = random_automorphisms(seed).len();
    let mut out: Vec<AutomorphismCheck> = (0..kinds)
        .map(|_| AutomorphismCheck {
            kind: String::new(),
            trials,
            homomorphism_failure: None,
            inverse_failure: None,
            passed: true,
        })
        .collect();
    for trial in 0..trials {
        for (k, a) in random_automorphisms(seed.wrapping_add(trial as u64 + 1)).into_iter().enumerate() {
            let c = &mut out[k];
            c.kind = a.name().to_string();
            let (v, w) = (random_vec(&mut rng), random_vec(&mut rng));
            let ok = a.validate().is_ok()
                && match (a.apply(&v), a.apply(&w), g.bracket(&v, &w)) {
                    (Ok(av), Ok(aw), Ok(b)) => g.bracket(&av, &aw).ok() == a.apply(&b).ok(),
                    _ => false,
                };
            if !ok && c.homomorphism_failure.is_none() {
                c.homomorphism_failure = Some(trial);
            }
            let back = a.inverse().and_then(|i| a.apply(&v).and_then(|av| i.apply(&av)));
            if back.as_ref().ok() != Some(&v) && c.inverse_failure.is_none() {
                c.inverse_failure = Some(trial);
            }
            c.passed = c.homomorphism_failure.is_none() && c.inverse_failure.is_none();
        }
    }
    out
}
