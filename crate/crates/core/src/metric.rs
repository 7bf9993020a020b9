//! The line element: symmetric classical metric, its inverse, the centrality
//! condition and the symmetric constants it determines.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::algebra::{Calculus, StructureConstants, SymmetricPart};
use crate::curvature::Connection;
use crate::error::Error;
use crate::expr::{GradedExpr, Monomial, Poly, RatFunc};
use crate::tensor::Tensor;

/// Symmetric `g_{μν}` with no first-order part and a nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: Tensor,
    inv: InverseMetric,
}

/// `g^{μν}` with `g^{μκ} g_{κν} = δ^μ_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseMetric(Tensor);

impl InverseMetric {
    pub fn get(&self, mu: usize, nu: usize) -> &GradedExpr {
        self.0.get(&[mu, nu])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }
}

impl Metric {
    pub fn new(g: Tensor) -> Result<Self, Error> {
        if g.rank() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: g.rank() });
        }
        for (idx, v) in g.iter() {
            if !v.order1().is_zero() {
                return Err(Error::Invariant(format!(
                    "metric component g[{}][{}] depends on the deformation symbol",
                    idx[0], idx[1]
                )));
            }
            if g.get(&[idx[1], idx[0]]) != v {
                return Err(Error::Invariant(format!(
                    "metric is not symmetric: g[{}][{}] != g[{}][{}]",
                    idx[0], idx[1], idx[1], idx[0]
                )));
            }
        }
        let inv = inverse_matrix(&g)?;
        Ok(Metric { g, inv: InverseMetric(inv) })
    }

    pub fn diagonal(entries: Vec<GradedExpr>) -> Result<Self, Error> {
        let dim = entries.len();
        Metric::new(Tensor::from_fn(dim, 2, |i| if i[0] == i[1] { entries[i[0]].clone() } else { GradedExpr::zero() }))
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn get(&self, mu: usize, nu: usize) -> &GradedExpr {
        self.g.get(&[mu, nu])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.g
    }

    pub fn inverse(&self) -> &InverseMetric {
        &self.inv
    }

    pub fn determinant(&self) -> GradedExpr {
        determinant(&self.g)
    }
}

/// Inverse by Gauss-Jordan elimination over the rational-function field.
pub fn inverse_metric(g: &Metric) -> InverseMetric {
    g.inverse().clone()
}

fn inverse_matrix(g: &Tensor) -> Result<Tensor, Error> {
    let n = g.dim();
    let mut a: Vec<Vec<GradedExpr>> = (0..n).map(|i| (0..n).map(|j| g.get(&[i, j]).clone()).collect()).collect();
    let mut inv: Vec<Vec<GradedExpr>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { GradedExpr::one() } else { GradedExpr::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMetric)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
            }
        }
    }
    Ok(Tensor::from_fn(n, 2, |i| inv[i[0]][i[1]].clone()))
}

fn determinant(g: &Tensor) -> GradedExpr {
    let n = g.dim();
    let mut a: Vec<Vec<GradedExpr>> = (0..n).map(|i| (0..n).map(|j| g.get(&[i, j]).clone()).collect()).collect();
    let mut det = GradedExpr::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return GradedExpr::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det = &det * &a[col][col];
        let p = a[col][col].recip().expect("pivot is nonzero");
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &p;
            for j in col..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
            }
        }
    }
    det
}

/// `E^λ_{μν} = [x^λ, g_{μν}] − D^{αλ}_μ g_{αν} − D^{αλ}_ν g_{αμ}`; zero iff the
/// line element is central.
pub fn centrality_residual(g: &Metric, calc: &Calculus) -> Result<Tensor, Error> {
    if g.dim() != calc.dim() {
        return Err(Error::DimensionMismatch { expected: calc.dim(), found: g.dim() });
    }
    let dim = g.dim();
    let d = calc.d_tensor();
    Tensor::try_from_fn(dim, 3, |i| {
        let (l, m, n) = (i[0], i[1], i[2]);
        let mut v = calc.coord_commutator(l, g.get(m, n))?;
        for a in 0..dim {
            v = &v - &(d.get(a, l, m) * g.get(a, n));
            v = &v - &(d.get(a, l, n) * g.get(a, m));
        }
        Ok(v)
    })
}

/// One scalar equation of the centrality system: the coefficient of a
/// coordinate monomial in one residual component, after clearing denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub component: [usize; 3],
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(SymmetricPart),
    /// Every solution is `particular + Σ c_i directions[i]` for free rational `c_i`.
    Family { particular: SymmetricPart, directions: Vec<SymmetricPart> },
    NoSolution { inconsistent: Vec<Equation> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// Parameter polynomials that were divided by and are assumed nonzero.
    pub assumptions: Vec<Poly>,
}

impl SolveReport {
    pub fn solution(&self) -> Option<&SymmetricPart> {
        match &self.outcome {
            SolveOutcome::Unique(s) => Some(s),
            SolveOutcome::Family { particular, .. } => Some(particular),
            SolveOutcome::NoSolution { .. } => None,
        }
    }
}

/// The unknowns `S^{μν}_κ` with `μ ≤ ν`.
fn unknowns(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 0..dim {
        for n in m..dim {
            for k in 0..dim {
                out.push((m, n, k));
            }
        }
    }
    out
}

fn symmetric_from(dim: usize, values: &[(usize, usize, usize, RatFunc)]) -> SymmetricPart {
    let mut t = Tensor::zeros(dim, 3);
    for (m, n, k, v) in values {
        let e = GradedExpr::grade1(v.clone());
        t.set(&[*m, *n, *k], e.clone());
        t.set(&[*n, *m, *k], e);
    }
    SymmetricPart::new(t).expect("symmetric by construction")
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    a.div_exact(&g).expect("gcd divides").mul(b)
}

/// Solves the centrality condition for `S` given `g` and `C`.
///
/// Each residual component is affine in the unknowns. After clearing
/// denominators every coordinate monomial gives one equation over the
/// parameter polynomials, which is reduced by fraction-free elimination.
pub fn solve_symmetric_part(g: &Metric, c: &StructureConstants) -> Result<SolveReport, Error> {
    if g.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: g.dim() });
    }
    let dim = g.dim();
    let vars = unknowns(dim);
    let base_calc = Calculus::new(c.clone(), &SymmetricPart::zero(dim))?;
    let base = centrality_residual(g, &base_calc)?;
    let columns: Vec<Tensor> = vars
        .iter()
        .map(|&(m, n, k)| {
            let s = symmetric_from(dim, &[(m, n, k, RatFunc::one())]);
            let calc = Calculus::new(c.clone(), &s)?;
            Ok(centrality_residual(g, &calc)?.sub(&base))
        })
        .collect::<Result<_, Error>>()?;

    // rows: coefficients of each unknown, then the right-hand side
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    let mut origin: Vec<Equation> = Vec::new();
    for (idx, b) in base.iter() {
        let entries: Vec<&RatFunc> =
            std::iter::once(b.order1()).chain(columns.iter().map(|col| col.get(&idx).order1())).collect();
        if entries.iter().all(|e| e.is_zero()) {
            continue;
        }
        let den = entries.iter().fold(Poly::one(), |acc, e| lcm(&acc, e.denom()));
        let cleared: Vec<Poly> = entries
            .iter()
            .map(|e| e.numer().mul(&den.div_exact(e.denom()).expect("lcm is a multiple")))
            .collect();
        let mut by_monomial: BTreeMap<Monomial, Vec<Poly>> = BTreeMap::new();
        for (j, p) in cleared.iter().enumerate() {
            for (m, coeff) in p.split_coords() {
                by_monomial.entry(m).or_insert_with(|| vec![Poly::zero(); cleared.len()])[j] = coeff;
            }
        }
        for (m, mut eq) in by_monomial {
            let rhs = eq.remove(0).neg();
            eq.push(rhs);
            rows.push(eq);
            origin.push(Equation { component: [idx[0], idx[1], idx[2]], monomial: m });
        }
    }

    let n = vars.len();
    let elim = bareiss(&mut rows, n);
    let inconsistent: Vec<Equation> = (elim.rank..rows.len())
        .filter(|&r| !rows[r][n].is_zero())
        .map(|r| origin[elim.row_origin[r]].clone())
        .collect();
    if !inconsistent.is_empty() {
        return Ok(SolveReport { outcome: SolveOutcome::NoSolution { inconsistent }, assumptions: elim.assumptions });
    }

    let free: Vec<usize> = (0..n).filter(|j| !elim.pivot_cols.contains(j)).collect();
    let solve = |rhs_on: bool, free_one: Option<usize>| -> Vec<RatFunc> {
        let mut x = vec![RatFunc::zero(); n];
        if let Some(f) = free_one {
            x[f] = RatFunc::one();
        }
        for (r, &pc) in elim.pivot_cols.iter().enumerate().rev() {
            let mut acc = if rhs_on { RatFunc::from(rows[r][n].clone()) } else { RatFunc::zero() };
            for j in (pc + 1)..n {
                if !rows[r][j].is_zero() && !x[j].is_zero() {
                    acc = acc.sub(&RatFunc::from(rows[r][j].clone()).mul(&x[j]));
                }
            }
            x[pc] = acc.div(&RatFunc::from(rows[r][pc].clone())).expect("pivot is nonzero");
        }
        x
    };
    let to_s = |x: Vec<RatFunc>| {
        let vals: Vec<_> = vars.iter().zip(x).map(|(&(m, n, k), v)| (m, n, k, v)).collect();
        symmetric_from(dim, &vals)
    };
    let particular = to_s(solve(true, None));
    let outcome = if free.is_empty() {
        SolveOutcome::Unique(particular)
    } else {
        let directions = free.iter().map(|&f| to_s(solve(false, Some(f)))).collect();
        SolveOutcome::Family { particular, directions }
    };
    Ok(SolveReport { outcome, assumptions: elim.assumptions })
}

struct Elimination {
    rank: usize,
    pivot_cols: Vec<usize>,
    row_origin: Vec<usize>,
    assumptions: Vec<Poly>,
}

/// Fraction-free row echelon form of an augmented matrix with `n` unknown
/// columns. Constant pivots are preferred; any other pivot is recorded as an
/// assumption that it is nonzero.
fn bareiss(rows: &mut [Vec<Poly>], n: usize) -> Elimination {
    let mut row_origin: Vec<usize> = (0..rows.len()).collect();
    let mut pivot_cols = Vec::new();
    let mut assumptions: Vec<Poly> = Vec::new();
    let mut prev = Poly::one();
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        let candidates: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
        let Some(&piv) = candidates
            .iter()
            .find(|&&i| rows[i][col].as_constant().is_some())
            .or_else(|| candidates.iter().min_by_key(|&&i| rows[i][col].term_count()))
        else {
            continue;
        };
        rows.swap(r, piv);
        row_origin.swap(r, piv);
        let p = rows[r][col].clone();
        if p.as_constant().is_none() {
            let m = p.monic();
            if !assumptions.contains(&m) {
                assumptions.push(m);
            }
        }
        for i in (r + 1)..rows.len() {
            let f = rows[i][col].clone();
            for j in 0..=n {
                let v = p.mul(&rows[i][j]).sub(&f.mul(&rows[r][j]));
                rows[i][j] = v.div_exact(&prev).unwrap_or(v);
            }
        }
        prev = p;
        pivot_cols.push(col);
        r += 1;
    }
    Elimination { rank: r, pivot_cols, row_origin, assumptions }
}

/// Levi-Civita connection `Γ^κ_{μν} = ½ g^{κσ}(∂_μ g_{νσ} + ∂_ν g_{μσ} − ∂_σ g_{μν})`.
pub fn classical_christoffel(g: &Metric) -> Connection {
    let dim = g.dim();
    let dg: Vec<Tensor> = (0..dim).map(|s| g.tensor().map(|e| e.partial(s))).collect();
    let ginv = g.inverse();
    let t = Tensor::from_fn(dim, 3, |i| {
        let (k, m, n) = (i[0], i[1], i[2]);
        let mut acc = GradedExpr::zero();
        for s in 0..dim {
            let gi = ginv.get(k, s);
            if gi.is_zero() {
                continue;
            }
            let term = &(dg[m].get(&[n, s]) + dg[n].get(&[m, s])) - dg[s].get(&[m, n]);
            acc = &acc + &(gi * &term);
        }
        acc.scale(&BigRational::new(1.into(), 2.into()))
    });
    Connection::new(t).expect("Levi-Civita connection is symmetric")
}

/// `g^{ρσ} g_{σν}` minus the identity; zero for an exact inverse.
pub fn inverse_defect(g: &Metric) -> Tensor {
    let dim = g.dim();
    Tensor::from_fn(dim, 2, |i| {
        let s: GradedExpr = (0..dim).map(|k| g.inverse().get(i[0], k) * g.get(k, i[1])).sum();
        if i[0] == i[1] {
            &s - &GradedExpr::one()
        } else {
            s
        }
    })
}
