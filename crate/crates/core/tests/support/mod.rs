//! Seeded random generators for models, functions and connections.
#![allow(dead_code)]

pub mod classical;

use num_rational::BigRational;
use rand::Rng;

use nccurv::algebra::{rational, Calculus, OneForm, StructureConstants, SymmetricPart, TwoTensor};
use nccurv::curvature::Connection;
use nccurv::expr::GradedExpr;
use nccurv::metric::Metric;
use nccurv::tensor::Tensor;

pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n = rng.random_range(-3i64..=3);
    let d = rng.random_range(1i64..=2);
    rational(n, d)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let q = small_rational(rng);
        if q != rational(0, 1) {
            return q;
        }
    }
}

/// Antisymmetric `C` satisfying Jacobi: any 2-dimensional choice, and in three
/// dimensions a κ-Minkowski type, Heisenberg type, su(2) type or zero.
pub fn random_c<R: Rng>(rng: &mut R, dim: usize) -> StructureConstants {
    let mut entries = Vec::new();
    let pair = |m: usize, n: usize, k: usize, q: BigRational, out: &mut Vec<_>| {
        out.push((m, n, k, q.clone()));
        out.push((n, m, k, -q));
    };
    match dim {
        2 => {
            for k in 0..2 {
                pair(0, 1, k, small_rational(rng), &mut entries);
            }
        }
        3 => match rng.random_range(0..4) {
            0 => {
                let a: Vec<BigRational> = (0..3).map(|_| small_rational(rng)).collect();
                for m in 0..3 {
                    for n in (m + 1)..3 {
                        for k in 0..3 {
                            let mut q = rational(0, 1);
                            if n == k {
                                q += &a[m];
                            }
                            if m == k {
                                q -= &a[n];
                            }
                            if q != rational(0, 1) {
                                pair(m, n, k, q, &mut entries);
                            }
                        }
                    }
                }
            }
            1 => {
                let (m, n) = match rng.random_range(0..3) {
                    0 => (0, 1),
                    1 => (0, 2),
                    _ => (1, 2),
                };
                let k = 3 - m - n;
                pair(m, n, k, nonzero_rational(rng), &mut entries);
            }
            2 => {
                let q = nonzero_rational(rng);
                pair(0, 1, 2, q.clone(), &mut entries);
                pair(1, 2, 0, q.clone(), &mut entries);
                pair(2, 0, 1, q, &mut entries);
            }
            _ => {}
        },
        _ => panic!("unsupported dimension {dim}"),
    }
    StructureConstants::from_entries(dim, &entries).expect("valid constants")
}

pub fn random_s<R: Rng>(rng: &mut R, dim: usize) -> SymmetricPart {
    let mut t = Tensor::zeros(dim, 3);
    for m in 0..dim {
        for n in m..dim {
            for k in 0..dim {
                if rng.random_bool(0.5) {
                    let v = GradedExpr::lambda().scale(&small_rational(rng));
                    t.set(&[m, n, k], v.clone());
                    t.set(&[n, m, k], v);
                }
            }
        }
    }
    SymmetricPart::new(t).expect("symmetric by construction")
}

pub fn random_calculus<R: Rng>(rng: &mut R, dim: usize) -> Calculus {
    Calculus::new(random_c(rng, dim), &random_s(rng, dim)).expect("valid calculus")
}

/// `q · Π x_i^{e_i}` with exponents in `-3..=3`.
pub fn random_monomial<R: Rng>(rng: &mut R, dim: usize) -> GradedExpr {
    let mut f = GradedExpr::one().scale(&nonzero_rational(rng));
    for i in 0..dim {
        let e = rng.random_range(-3i32..=3);
        f = &f * &GradedExpr::coord(i).pow(e).expect("coordinate powers are defined");
    }
    f
}

/// A monomial, possibly plus a second one with a grade-1 coefficient.
pub fn random_function<R: Rng>(rng: &mut R, dim: usize) -> GradedExpr {
    let f = random_monomial(rng, dim);
    if rng.random_bool(0.5) {
        &f + &(&GradedExpr::lambda() * &random_monomial(rng, dim))
    } else {
        f
    }
}

/// The bicrossproduct calculus with every constant scaled by `k`.
pub fn scaled_bicrossproduct(k: &BigRational) -> Calculus {
    let c = StructureConstants::from_entries(2, &[(1, 0, 1, k.clone()), (0, 1, 1, -k.clone())]).expect("valid");
    let mut s = Tensor::zeros(2, 3);
    let l = GradedExpr::lambda().scale(k);
    s.set(&[0, 0, 0], -&l);
    s.set(&[0, 1, 1], -&l.half());
    s.set(&[1, 0, 1], -&l.half());
    Calculus::new(c, &SymmetricPart::new(s).expect("symmetric")).expect("valid")
}

fn v_form() -> OneForm {
    OneForm(Tensor::from_fn(2, 1, |i| if i[0] == 0 { GradedExpr::coord(1) } else { -GradedExpr::coord(0) }))
}

fn coefficient<R: Rng>(rng: &mut R) -> GradedExpr {
    let q = GradedExpr::one().scale(&small_rational(rng));
    if rng.random_bool(0.3) {
        &q * &GradedExpr::param("b")
    } else {
        q
    }
}

/// `p v⊗v + q (v⊗dx + dx⊗v) + r dx⊗dx` with constant coefficients.
pub fn central_two_tensor<R: Rng>(rng: &mut R) -> Tensor {
    let v = v_form();
    let dx = OneForm::basis(2, 1);
    let vv = TwoTensor::outer(&v, &v).0;
    let sym = TwoTensor::outer(&v, &dx).0.add(&TwoTensor::outer(&dx, &v).0);
    let dxdx = TwoTensor::outer(&dx, &dx).0;
    vv.scale_by(&coefficient(rng))
        .add(&sym.scale_by(&coefficient(rng)))
        .add(&dxdx.scale_by(&coefficient(rng)))
}

/// A classical connection with each `∇(dx^ν)` built from [`central_two_tensor`].
pub fn central_bicross_connection<R: Rng>(rng: &mut R) -> Connection {
    let comps = [central_two_tensor(rng), central_two_tensor(rng)];
    let t = Tensor::from_fn(2, 3, |i| comps[i[0]].get(&[i[1], i[2]]).clone());
    Connection::new(t).expect("symmetric by construction")
}

/// Symmetric grade-0 connection with monomial entries.
pub fn random_connection<R: Rng>(rng: &mut R, dim: usize) -> Connection {
    let mut t = Tensor::zeros(dim, 3);
    for k in 0..dim {
        for m in 0..dim {
            for n in m..dim {
                if rng.random_bool(0.4) {
                    let v = random_monomial(rng, dim);
                    t.set(&[k, m, n], v.clone());
                    t.set(&[k, n, m], v);
                }
            }
        }
    }
    Connection::new(t).expect("symmetric by construction")
}

/// A nondegenerate constant symmetric metric.
pub fn constant_metric<R: Rng>(rng: &mut R, dim: usize) -> Metric {
    loop {
        let mut t = Tensor::zeros(dim, 2);
        for m in 0..dim {
            for n in m..dim {
                let v = GradedExpr::one().scale(&small_rational(rng));
                t.set(&[m, n], v.clone());
                t.set(&[n, m], v);
            }
        }
        if let Ok(g) = Metric::new(t) {
            return g;
        }
    }
}

/// `diag(q_i · monomial_i)` with Laurent monomial entries.
pub fn diagonal_metric<R: Rng>(rng: &mut R, dim: usize) -> Metric {
    let entries = (0..dim)
        .map(|_| {
            let mut f = GradedExpr::one().scale(&nonzero_rational(rng));
            for i in 0..dim {
                let e = rng.random_range(-2i32..=2);
                f = &f * &GradedExpr::coord(i).pow(e).expect("defined");
            }
            f
        })
        .collect();
    Metric::diagonal(entries).expect("nonzero diagonal")
}

/// A nondegenerate metric from [`central_two_tensor`].
pub fn central_metric<R: Rng>(rng: &mut R) -> Metric {
    loop {
        if let Ok(g) = Metric::new(central_two_tensor(rng)) {
            return g;
        }
    }
}
