//! Lie-algebraic commutation rules and the first-order differential calculus.
//!
//! A stored commutative representative stands for the operator word with
//! coordinates in increasing index order and every differential to the right
//! of every coordinate. All rules below are exact to first order in the
//! deformation symbol:
//!
//! * `[x^μ, f]    = C^{μν}_κ x^κ ∂_ν f`
//! * `[dx^σ, f]   = D^{σν}_κ (∂_ν f) dx^κ`
//! * `df          = (∂_κ f + Σ_{i<j} D^{ij}_κ ∂_i∂_j f + ½ Σ_i D^{ii}_κ ∂_i² f) dx^κ`
//! * `f ⋆ g       = fg + Σ_{i>j} C^{ij}_κ x^κ ∂_i f ∂_j g`
//!
//! The second-derivative terms of `df` come from moving each differential
//! produced by the Leibniz rule to the right of the remaining letters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::expr::GradedExpr;
use crate::tensor::Tensor;

/// `C^{μν}_κ`, each entry an exact rational multiple of the deformation symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants(Tensor);

impl StructureConstants {
    pub fn new(t: Tensor) -> Result<Self, Error> {
        if t.rank() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: t.rank() });
        }
        for (idx, v) in t.iter() {
            if v.as_lambda_multiple().is_none() && !v.is_zero() {
                return Err(Error::Invariant(format!(
                    "structure constant C{idx:?} must be a rational multiple of the deformation symbol"
                )));
            }
        }
        Ok(StructureConstants(t))
    }

    pub fn zero(dim: usize) -> Self {
        StructureConstants(Tensor::zeros(dim, 3))
    }

    /// From `(μ, ν, κ, q)` entries meaning `C^{μν}_κ = q·λ`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, BigRational)]) -> Result<Self, Error> {
        let mut t = Tensor::zeros(dim, 3);
        for (m, n, k, q) in entries {
            t.try_get(&[*m, *n, *k])?;
            t.set(&[*m, *n, *k], GradedExpr::lambda().scale(q));
        }
        Self::new(t)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, mu: usize, nu: usize, kappa: usize) -> &GradedExpr {
        self.0.get(&[mu, nu, kappa])
    }

    /// The rational `q` in `C^{μν}_κ = q·λ`.
    pub fn coeff(&self, mu: usize, nu: usize, kappa: usize) -> BigRational {
        self.get(mu, nu, kappa).as_lambda_multiple().unwrap_or_else(BigRational::zero)
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `S^{μν}_κ`: constant, first order, symmetric in `μν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPart(Tensor);

impl SymmetricPart {
    pub fn new(t: Tensor) -> Result<Self, Error> {
        if t.rank() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: t.rank() });
        }
        for (idx, v) in t.iter() {
            if !v.is_pure_grade1() || v.has_coords() {
                return Err(Error::Invariant(format!(
                    "symmetric constant S{idx:?} must be first order and free of coordinates"
                )));
            }
            let swapped = t.get(&[idx[1], idx[0], idx[2]]);
            if swapped != v {
                return Err(Error::Invariant(format!(
                    "S is not symmetric: S[{}][{}][{}] != S[{}][{}][{}]",
                    idx[0], idx[1], idx[2], idx[1], idx[0], idx[2]
                )));
            }
        }
        Ok(SymmetricPart(t))
    }

    pub fn zero(dim: usize) -> Self {
        SymmetricPart(Tensor::zeros(dim, 3))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, mu: usize, nu: usize, kappa: usize) -> &GradedExpr {
        self.0.get(&[mu, nu, kappa])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }
}

/// `D^{μν}_κ = C^{μν}_κ / 2 + S^{μν}_κ`, governing `[dx^μ, x^ν] = D^{μν}_κ dx^κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTensor(Tensor);

impl DTensor {
    /// Combines `C` and `S` and checks that `D^{μν}_κ − D^{νμ}_κ = C^{μν}_κ`.
    pub fn build(c: &StructureConstants, s: &SymmetricPart) -> Result<DTensor, Error> {
        if c.dim() != s.dim() {
            return Err(Error::DimensionMismatch { expected: c.dim(), found: s.dim() });
        }
        let report = validate_algebra(c);
        if !report.antisymmetry_violations.is_empty() {
            return Err(Error::Invariant(format!(
                "structure constants are not antisymmetric at {:?}",
                report.antisymmetry_violations
            )));
        }
        let dim = c.dim();
        let d = Tensor::from_fn(dim, 3, |i| &c.tensor().get(i).half() + s.tensor().get(i));
        for (idx, v) in d.iter() {
            let anti = v - d.get(&[idx[1], idx[0], idx[2]]);
            if &anti != c.tensor().get(&idx) {
                return Err(Error::Invariant(format!("D − Dᵀ does not reproduce C at {idx:?}")));
            }
        }
        Ok(DTensor(d))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, mu: usize, nu: usize, kappa: usize) -> &GradedExpr {
        self.0.get(&[mu, nu, kappa])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `a_μ dx^μ` with coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub Tensor);

impl OneForm {
    pub fn zero(dim: usize) -> Self {
        OneForm(Tensor::zeros(dim, 1))
    }

    /// The basis element `dx^mu`.
    pub fn basis(dim: usize, mu: usize) -> Self {
        OneForm(Tensor::from_fn(dim, 1, |i| if i[0] == mu { GradedExpr::one() } else { GradedExpr::zero() }))
    }

    pub fn get(&self, mu: usize) -> &GradedExpr {
        self.0.get(&[mu])
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `f_{ρσ} dx^ρ ⊗ dx^σ` with coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTensor(pub Tensor);

impl TwoTensor {
    pub fn get(&self, rho: usize, sigma: usize) -> &GradedExpr {
        self.0.get(&[rho, sigma])
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale_by(&self, k: &GradedExpr) -> TwoTensor {
        TwoTensor(self.0.scale_by(k))
    }

    /// `a ⊗ b` for one-forms with classical coefficients (no reordering needed
    /// at the order this is used for).
    pub fn outer(a: &OneForm, b: &OneForm) -> TwoTensor {
        TwoTensor(Tensor::from_fn(a.dim(), 2, |i| a.get(i[0]) * b.get(i[1])))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    /// `(μ, ν, κ)` with `C^{μν}_κ ≠ −C^{νμ}_κ`.
    pub antisymmetry_violations: Vec<[usize; 3]>,
    /// `(μ, ν, ρ, κ)` where the cyclic Jacobi sum is nonzero.
    pub jacobi_violations: Vec<[usize; 4]>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .antisymmetry_violations
            .iter()
            .map(|[m, n, k]| format!("antisymmetry: C[{m}][{n}][{k}] != -C[{n}][{m}][{k}]"))
            .collect();
        out.extend(
            self.jacobi_violations
                .iter()
                .map(|[m, n, r, k]| format!("jacobi: cyclic sum nonzero for (mu,nu,rho,kappa)=({m},{n},{r},{k})")),
        );
        out
    }
}

/// Checks antisymmetry and the Jacobi identity on the rational coefficients of `C`.
pub fn validate_algebra(c: &StructureConstants) -> AlgebraReport {
    let dim = c.dim();
    let mut report = AlgebraReport::default();
    for m in 0..dim {
        for n in m..dim {
            for k in 0..dim {
                if c.coeff(m, n, k) != -c.coeff(n, m, k) {
                    report.antisymmetry_violations.push([m, n, k]);
                }
            }
        }
    }
    // The cyclic sum is totally antisymmetric once C is, so m < n < r suffices.
    for m in 0..dim {
        for n in (m + 1)..dim {
            for r in (n + 1)..dim {
                for k in 0..dim {
                    let mut sum = BigRational::zero();
                    for s in 0..dim {
                        sum += c.coeff(m, n, s) * c.coeff(s, r, k)
                            + c.coeff(n, r, s) * c.coeff(s, m, k)
                            + c.coeff(r, m, s) * c.coeff(s, n, k);
                    }
                    if !sum.is_zero() {
                        report.jacobi_violations.push([m, n, r, k]);
                    }
                }
            }
        }
    }
    report
}

/// The structure constants and `D` tensor of one model, with the commutator
/// and differential rules built on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calculus {
    c: StructureConstants,
    d: DTensor,
}

impl Calculus {
    pub fn new(c: StructureConstants, s: &SymmetricPart) -> Result<Self, Error> {
        let d = DTensor::build(&c, s)?;
        Ok(Calculus { c, d })
    }

    /// The commutative calculus in `dim` dimensions.
    pub fn classical(dim: usize) -> Self {
        Calculus::new(StructureConstants::zero(dim), &SymmetricPart::zero(dim)).expect("zero tensors are valid")
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.c
    }

    pub fn d_tensor(&self) -> &DTensor {
        &self.d
    }

    fn check(&self, i: usize) -> Result<(), Error> {
        if i >= self.dim() {
            Err(Error::IndexOutOfRange { index: i, dim: self.dim() })
        } else {
            Ok(())
        }
    }

    /// `[x^μ, f] = Σ C^{μν}_κ x^κ ∂_ν f`.
    pub fn coord_commutator(&self, mu: usize, f: &GradedExpr) -> Result<GradedExpr, Error> {
        self.check(mu)?;
        let dim = self.dim();
        let mut out = GradedExpr::zero();
        for nu in 0..dim {
            let weight: GradedExpr = (0..dim)
                .filter(|&k| !self.c.get(mu, nu, k).is_zero())
                .map(|k| self.c.get(mu, nu, k) * &GradedExpr::coord(k))
                .sum();
            if weight.is_zero() {
                continue;
            }
            out = &out + &(&weight * &f.partial(nu));
        }
        Ok(out)
    }

    /// `[dx^σ, f] = Σ D^{σν}_κ (∂_ν f) dx^κ`.
    pub fn diff_commutator(&self, sigma: usize, f: &GradedExpr) -> Result<OneForm, Error> {
        self.check(sigma)?;
        let dim = self.dim();
        let partials: Vec<GradedExpr> = (0..dim).map(|nu| f.partial(nu)).collect();
        Ok(OneForm(Tensor::from_fn(dim, 1, |i| {
            let k = i[0];
            (0..dim)
                .filter(|&nu| !self.d.get(sigma, nu, k).is_zero())
                .map(|nu| self.d.get(sigma, nu, k) * &partials[nu])
                .sum()
        })))
    }

    /// `[x^μ, f_{ρσ} dx^ρ⊗dx^σ]`, re-collected on the ordered basis.
    pub fn tensor_commutator(&self, mu: usize, t: &TwoTensor) -> Result<TwoTensor, Error> {
        self.check(mu)?;
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.dim() });
        }
        let dim = self.dim();
        let d = &self.d;
        Tensor::try_from_fn(dim, 2, |i| {
            let (a, b) = (i[0], i[1]);
            let mut v = self.coord_commutator(mu, t.get(a, b))?;
            for r in 0..dim {
                v = &v - &(t.get(r, b) * d.get(r, mu, a));
                v = &v - &(t.get(a, r) * d.get(r, mu, b));
            }
            Ok(v)
        })
        .map(TwoTensor)
    }

    /// The first-order ordering correction carried by `df` in direction `κ`.
    fn ordering_correction(&self, second: &[Vec<GradedExpr>], kappa: usize) -> GradedExpr {
        let dim = self.dim();
        let mut out = GradedExpr::zero();
        for i in 0..dim {
            let dii = self.d.get(i, i, kappa);
            if !dii.is_zero() {
                out = &out + &(&dii.half() * &second[i][i]);
            }
            for j in (i + 1)..dim {
                let dij = self.d.get(i, j, kappa);
                if !dij.is_zero() {
                    out = &out + &(dij * &second[i][j]);
                }
            }
        }
        out
    }

    /// Exterior derivative of a function, left-normalized.
    pub fn d(&self, f: &GradedExpr) -> OneForm {
        let dim = self.dim();
        let first: Vec<GradedExpr> = (0..dim).map(|k| f.partial(k)).collect();
        // Only the classical part feeds the correction; grade-1 × D truncates.
        let f0 = f.classical();
        let second: Vec<Vec<GradedExpr>> = if self.d.is_zero() {
            Vec::new()
        } else {
            (0..dim)
                .map(|i| {
                    let fi = f0.partial(i);
                    (0..dim).map(|j| if j < i { GradedExpr::zero() } else { fi.partial(j) }).collect()
                })
                .collect()
        };
        OneForm(Tensor::from_fn(dim, 1, |k| {
            if second.is_empty() {
                first[k[0]].clone()
            } else {
                &first[k[0]] + &self.ordering_correction(&second, k[0])
            }
        }))
    }

    /// Ordered product of two function representatives.
    pub fn star(&self, f: &GradedExpr, g: &GradedExpr) -> GradedExpr {
        let dim = self.dim();
        let mut out = f * g;
        for i in 0..dim {
            for j in 0..i {
                let w: GradedExpr = (0..dim).map(|k| self.c.get(i, j, k) * &GradedExpr::coord(k)).sum();
                if w.is_zero() {
                    continue;
                }
                out = &out + &(&w * &(&f.partial(i) * &g.partial(j)));
            }
        }
        out
    }

    /// `f · ω`.
    pub fn left_mul(&self, f: &GradedExpr, w: &OneForm) -> OneForm {
        OneForm(Tensor::from_fn(self.dim(), 1, |k| self.star(f, w.get(k[0]))))
    }

    /// `ω · g`, moving `g` left through each differential.
    pub fn right_mul(&self, w: &OneForm, g: &GradedExpr) -> OneForm {
        let dim = self.dim();
        let mut out = Tensor::from_fn(dim, 1, |k| self.star(w.get(k[0]), g));
        for k in 0..dim {
            let moved = self.diff_commutator(k, g).expect("index in range");
            for l in 0..dim {
                let add = w.get(k) * moved.get(l);
                if !add.is_zero() {
                    out.set(&[l], out.get(&[l]) + &add);
                }
            }
        }
        OneForm(out)
    }

    /// Exterior derivative of a one-form `a_κ dx^κ`, as the antisymmetric
    /// components `F_{λκ}` of `Σ F_{λκ} dx^λ ∧ dx^κ / 2`.
    pub fn d_one_form(&self, w: &OneForm) -> TwoTensor {
        let dim = self.dim();
        let da: Vec<OneForm> = (0..dim).map(|k| self.d(w.get(k))).collect();
        TwoTensor(Tensor::from_fn(dim, 2, |i| {
            let (l, k) = (i[0], i[1]);
            da[k].get(l) - da[l].get(k)
        }))
    }
}

/// `q` as a rational, for building constants in code.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
