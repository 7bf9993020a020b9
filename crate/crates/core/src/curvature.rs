//! Quantum-corrected Christoffel symbols and the curvature tensors built on them.

use sha2::{Digest, Sha256};

use crate::algebra::{Calculus, TwoTensor};
use crate::error::Error;
use crate::expr::GradedExpr;
use crate::metric::{InverseMetric, Metric};
use crate::tensor::Tensor;

/// Index conventions used throughout this module. Reports carry its hash so
/// outputs computed under different conventions are never silently compared.
pub const CONVENTIONS: &str = "\
ordering: stored products are coordinate words in increasing index order, differentials rightmost
christoffel: G[k][m][n] = G^k_{mn}, nabla(dx^k) = -G^k_{mn} dx^m (x) dx^n
derivative: dG^k_{mn} = G[k][m][n][l] dx^l, coefficients left of the differential
sigma: [dx^s, G^m_{rn}] = Sigma[s][m][r][n][l] dx^l, classical G only
riemann: R[m][s][a][r] = dG[m][r][s][a] - dG[m][a][s][r] + G^m_{al} G^l_{rs} - G^m_{rl} G^l_{as} + G^m_{lb} (Sigma[l][b][r][s][a] - Sigma[l][b][a][s][r])
ricci: Ric[s][r] = R[m][s][m][r]
scalar: R = ginv[r][s] Ric[s][r]
einstein: E[s][r] = Ric[s][r] - 1/2 R g[s][r]
";

/// Hex SHA-256 of [`CONVENTIONS`].
pub fn convention_hash() -> String {
    Sha256::digest(CONVENTIONS.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// `Γ^κ_{μν}` stored as `[κ][μ][ν]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection(Tensor);

impl Connection {
    /// Requires rank 3 and a classical part symmetric in the lower indices.
    pub fn new(t: Tensor) -> Result<Self, Error> {
        if t.rank() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: t.rank() });
        }
        for (idx, v) in t.iter() {
            if idx[1] < idx[2] && v.order0() != t.get(&[idx[0], idx[2], idx[1]]).order0() {
                return Err(Error::Invariant(format!(
                    "christoffel symbols are not symmetric in the lower indices at [{}][{}][{}]",
                    idx[0], idx[1], idx[2]
                )));
            }
        }
        Ok(Connection(t))
    }

    pub fn zero(dim: usize) -> Self {
        Connection(Tensor::zeros(dim, 3))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, k: usize, m: usize, n: usize) -> &GradedExpr {
        self.0.get(&[k, m, n])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }

    pub fn is_classical(&self) -> bool {
        self.0.iter().all(|(_, v)| v.order1().is_zero())
    }

    /// `Γ`, the grade-0 part.
    pub fn classical(&self) -> Connection {
        Connection(self.0.classical())
    }

    /// `qΓ`, the grade-1 part.
    pub fn quantum(&self) -> Tensor {
        self.0.quantum()
    }

    /// `Γ^k_{ρσ}` as the coefficient array of a two-tensor.
    pub fn component(&self, k: usize) -> TwoTensor {
        TwoTensor(Tensor::from_fn(self.dim(), 2, |i| self.get(k, i[0], i[1]).clone()))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn require_classical(gamma: &Connection) -> Result<(), Error> {
    if gamma.is_classical() {
        Ok(())
    } else {
        Err(Error::Invariant("expected a classical connection with no first-order part".into()))
    }
}

/// `Σ^{σμ}_{ρνλ}` stored as `[σ][μ][ρ][ν][λ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTensor(Tensor);

impl SigmaTensor {
    pub fn get(&self, s: usize, m: usize, r: usize, n: usize, l: usize) -> &GradedExpr {
        self.0.get(&[s, m, r, n, l])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }
}

/// `[dx^σ, Γ^μ_{ρν}] = Σ^{σμ}_{ρνλ} dx^λ`.
pub fn sigma_tensor(gamma: &Connection, calc: &Calculus) -> Result<SigmaTensor, Error> {
    check_dim(calc.dim(), gamma.dim())?;
    require_classical(gamma)?;
    let dim = calc.dim();
    let mut t = Tensor::zeros(dim, 5);
    if calc.d_tensor().is_zero() {
        return Ok(SigmaTensor(t));
    }
    for s in 0..dim {
        for (idx, g) in gamma.tensor().nonzero() {
            let w = calc.diff_commutator(s, g)?;
            for l in 0..dim {
                t.set(&[s, idx[0], idx[1], idx[2], l], w.get(l).clone());
            }
        }
    }
    Ok(SigmaTensor(t))
}

/// Corrected connection for a general (not necessarily central) classical
/// connection:
///
/// `Γ̃^μ_{ρσ} = Γ^μ_{ρσ} + ½Γ^μ_{αβ}(D^{λβ}_ρ Γ^α_{λσ} + D^{λβ}_σ Γ^α_{ρλ} − D^{αβ}_λ Γ^λ_{ρσ}) − ½Γ^μ_{αβ}[x^β, Γ^α_{ρσ}]`
pub fn quantum_christoffel(gamma: &Connection, calc: &Calculus) -> Result<Connection, Error> {
    check_dim(calc.dim(), gamma.dim())?;
    require_classical(gamma)?;
    let dim = calc.dim();
    let d = calc.d_tensor();
    let g = |k, m, n| gamma.get(k, m, n);
    // [x^β, Γ^α_{ρσ}] indexed [β][α][ρ][σ]
    let comm = Tensor::try_from_fn(dim, 4, |i| calc.coord_commutator(i[0], g(i[1], i[2], i[3])))?;
    let t = Tensor::from_fn(dim, 3, |i| {
        let (mu, rho, sigma) = (i[0], i[1], i[2]);
        let mut corr = GradedExpr::zero();
        for a in 0..dim {
            for b in 0..dim {
                let outer = g(mu, a, b);
                if outer.is_zero() {
                    continue;
                }
                let mut inner = -comm.get(&[b, a, rho, sigma]);
                for l in 0..dim {
                    inner = &inner + &(d.get(l, b, rho) * g(a, l, sigma));
                    inner = &inner + &(d.get(l, b, sigma) * g(a, rho, l));
                    inner = &inner - &(d.get(a, b, l) * g(l, rho, sigma));
                }
                corr = &corr + &(outer * &inner);
            }
        }
        g(mu, rho, sigma) + &corr.half()
    });
    Connection::new(t)
}

/// Per-component values of `D^{λμ}_ρ Γ^ν_{λσ} + D^{λμ}_σ Γ^ν_{ρλ} − [x^μ, Γ^ν_{ρσ}]`,
/// which is `[x^μ, ∇(dx^ν)]` read off the ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityReport {
    /// Indexed `[μ][ν][ρ][σ]`.
    pub residual: Tensor,
}

impl CentralityReport {
    pub fn is_central(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn nonzero(&self) -> Vec<[usize; 4]> {
        self.residual.nonzero().map(|(i, _)| [i[0], i[1], i[2], i[3]]).collect()
    }
}

pub fn connection_centrality_check(gamma: &Connection, calc: &Calculus) -> Result<CentralityReport, Error> {
    check_dim(calc.dim(), gamma.dim())?;
    let dim = calc.dim();
    let mut residual = Tensor::zeros(dim, 4);
    let classical = gamma.classical();
    for nu in 0..dim {
        let comp = classical.component(nu);
        for mu in 0..dim {
            let c = calc.tensor_commutator(mu, &comp)?;
            for (idx, v) in c.0.iter() {
                residual.set(&[mu, nu, idx[0], idx[1]], -v);
            }
        }
    }
    Ok(CentralityReport { residual })
}

/// `Γ̃^μ_{ρσ} = Γ^μ_{ρσ} − ½ D^{αβ}_λ Γ^μ_{αβ} Γ^λ_{ρσ}`, valid only for central connections.
pub fn quantum_christoffel_central(gamma: &Connection, calc: &Calculus) -> Result<Connection, Error> {
    check_dim(calc.dim(), gamma.dim())?;
    require_classical(gamma)?;
    let report = connection_centrality_check(gamma, calc)?;
    if !report.is_central() {
        return Err(Error::CentralityViolation(
            report.nonzero().iter().map(|[m, n, r, s]| format!("[x^{m}, nabla(dx^{n})]_{{{r}{s}}}")).collect(),
        ));
    }
    let dim = calc.dim();
    let d = calc.d_tensor();
    let t = Tensor::from_fn(dim, 3, |i| {
        let (mu, rho, sigma) = (i[0], i[1], i[2]);
        let mut corr = GradedExpr::zero();
        for a in 0..dim {
            for b in 0..dim {
                let outer = gamma.get(mu, a, b);
                if outer.is_zero() {
                    continue;
                }
                for l in 0..dim {
                    let dab = d.get(a, b, l);
                    if !dab.is_zero() {
                        corr = &corr + &(&(dab * outer) * gamma.get(l, rho, sigma));
                    }
                }
            }
        }
        gamma.get(mu, rho, sigma) - &corr.half()
    });
    Connection::new(t)
}

/// `dΓ̃^κ_{μν} = Γ̃^κ_{μνλ} dx^λ`, stored as `[κ][μ][ν][λ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionDerivative(Tensor);

impl ConnectionDerivative {
    pub fn get(&self, k: usize, m: usize, n: usize, l: usize) -> &GradedExpr {
        self.0.get(&[k, m, n, l])
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }
}

pub fn christoffel_derivative(gamma: &Connection, calc: &Calculus) -> Result<ConnectionDerivative, Error> {
    check_dim(calc.dim(), gamma.dim())?;
    let dim = calc.dim();
    let mut t = Tensor::zeros(dim, 4);
    for (idx, g) in gamma.tensor().nonzero() {
        let w = calc.d(g);
        for l in 0..dim {
            t.set(&[idx[0], idx[1], idx[2], l], w.get(l).clone());
        }
    }
    Ok(ConnectionDerivative(t))
}

fn derivative_part(dg: &ConnectionDerivative, dim: usize) -> Tensor {
    Tensor::from_fn(dim, 4, |i| {
        let (m, s, a, r) = (i[0], i[1], i[2], i[3]);
        dg.get(m, r, s, a) - dg.get(m, a, s, r)
    })
}

fn product_part(left: &Tensor, right: &Tensor, dim: usize) -> Tensor {
    Tensor::from_fn(dim, 4, |i| {
        let (m, s, a, r) = (i[0], i[1], i[2], i[3]);
        let mut acc = GradedExpr::zero();
        for l in 0..dim {
            acc = &acc + &(left.get(&[m, a, l]) * right.get(&[l, r, s]));
            acc = &acc - &(left.get(&[m, r, l]) * right.get(&[l, a, s]));
        }
        acc
    })
}

fn sigma_part(gamma: &Connection, sigma: &SigmaTensor, dim: usize) -> Tensor {
    Tensor::from_fn(dim, 4, |i| {
        let (m, s, a, r) = (i[0], i[1], i[2], i[3]);
        let mut acc = GradedExpr::zero();
        for l in 0..dim {
            for b in 0..dim {
                let g = gamma.get(m, l, b);
                if g.is_zero() {
                    continue;
                }
                acc = &acc + &(g * &(sigma.get(l, b, r, s, a) - sigma.get(l, b, a, s, r)));
            }
        }
        acc
    })
}

/// `R̃^μ_{σαρ}` stored as `[μ][σ][α][ρ]`.
pub fn riemann(
    corrected: &Connection,
    sigma: &SigmaTensor,
    gamma: &Connection,
    calc: &Calculus,
) -> Result<Tensor, Error> {
    check_dim(calc.dim(), corrected.dim())?;
    check_dim(calc.dim(), gamma.dim())?;
    require_classical(gamma)?;
    let dim = calc.dim();
    let dg = christoffel_derivative(corrected, calc)?;
    let r = derivative_part(&dg, dim)
        .add(&product_part(corrected.tensor(), corrected.tensor(), dim))
        .add(&sigma_part(gamma, sigma, dim));
    Ok(r)
}

/// The Riemann tensor assembled as a classical piece plus seven first-order
/// pieces, each computed separately from `Γ` and `qΓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannDecomposition {
    /// The curvature formula evaluated on `Γ` alone. Its first-order part is
    /// the ordering correction of `dΓ`.
    pub classical: Tensor,
    /// `qΓ^μ_{ρσα}`, `−qΓ^μ_{ασρ}`, `Γ^μ_{αλ}qΓ^λ_{ρσ}`, `qΓ^μ_{αλ}Γ^λ_{ρσ}`,
    /// `−Γ^μ_{ρλ}qΓ^λ_{ασ}`, `−qΓ^μ_{ρλ}Γ^λ_{ασ}`, `Γ^μ_{λβ}(Σ^{λβ}_{ρσα} − Σ^{λβ}_{ασρ})`.
    pub terms: [Tensor; 7],
}

impl RiemannDecomposition {
    pub fn total(&self) -> Tensor {
        self.terms.iter().fold(self.classical.clone(), |acc, t| acc.add(t))
    }
}

pub fn riemann_decomposition(
    gamma: &Connection,
    corrected: &Connection,
    sigma: &SigmaTensor,
    calc: &Calculus,
) -> Result<RiemannDecomposition, Error> {
    require_classical(gamma)?;
    let dim = calc.dim();
    let q = corrected.quantum();
    let g = gamma.tensor();
    let dq = christoffel_derivative(&Connection(q.clone()), calc)?;
    let dg = christoffel_derivative(gamma, calc)?;
    let classical = derivative_part(&dg, dim).add(&product_part(g, g, dim));
    let idx4 = |f: &dyn Fn(usize, usize, usize, usize) -> GradedExpr| {
        Tensor::from_fn(dim, 4, |i| f(i[0], i[1], i[2], i[3]))
    };
    let contract = |left: &Tensor, right: &Tensor, m: usize, x: usize, y: usize, s: usize| -> GradedExpr {
        (0..dim).map(|l| left.get(&[m, x, l]) * right.get(&[l, y, s])).sum()
    };
    let terms = [
        idx4(&|m, s, a, r| dq.get(m, r, s, a).clone()),
        idx4(&|m, s, a, r| -dq.get(m, a, s, r)),
        idx4(&|m, s, a, r| contract(g, &q, m, a, r, s)),
        idx4(&|m, s, a, r| contract(&q, g, m, a, r, s)),
        idx4(&|m, s, a, r| -contract(g, &q, m, r, a, s)),
        idx4(&|m, s, a, r| -contract(&q, g, m, r, a, s)),
        sigma_part(gamma, sigma, dim),
    ];
    Ok(RiemannDecomposition { classical, terms })
}

/// `R̃_{σρ} = R̃^μ_{σμρ}`.
pub fn ricci(riemann: &Tensor) -> Tensor {
    let dim = riemann.dim();
    Tensor::from_fn(dim, 2, |i| (0..dim).map(|m| riemann.get(&[m, i[0], m, i[1]]).clone()).sum())
}

/// `R̃ = g^{ρσ} R̃_{σρ}`.
pub fn ricci_scalar(ricci: &Tensor, ginv: &InverseMetric) -> GradedExpr {
    let dim = ricci.dim();
    let mut acc = GradedExpr::zero();
    for r in 0..dim {
        for s in 0..dim {
            let gi = ginv.get(r, s);
            if !gi.is_zero() {
                acc = &acc + &(gi * ricci.get(&[s, r]));
            }
        }
    }
    acc
}

/// `G̃_{σρ} = R̃_{σρ} − ½ R̃ g_{σρ}`.
pub fn einstein(ricci: &Tensor, scalar: &GradedExpr, g: &Metric) -> Tensor {
    let half_r = scalar.half();
    ricci.zip_with(g.tensor(), |r, gm| r - &(&half_r * gm))
}

/// Pairs `(σ, ρ)` with `σ < ρ` where `R̃_{σρ} ≠ R̃_{ρσ}`.
pub fn ricci_asymmetry(ricci: &Tensor) -> Vec<[usize; 2]> {
    let dim = ricci.dim();
    let mut out = Vec::new();
    for s in 0..dim {
        for r in (s + 1)..dim {
            if ricci.get(&[s, r]) != ricci.get(&[r, s]) {
                out.push([s, r]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureBundle {
    pub christoffel: Connection,
    pub riemann: Tensor,
    pub ricci: Tensor,
    /// Present when a metric is known.
    pub scalar: Option<GradedExpr>,
    pub einstein: Option<Tensor>,
}

/// Full pipeline from a classical connection.
pub fn curvature(gamma: &Connection, calc: &Calculus, metric: Option<&Metric>) -> Result<CurvatureBundle, Error> {
    let christoffel = quantum_christoffel(gamma, calc).map_err(|e| e.in_stage("christoffel"))?;
    let sigma = sigma_tensor(gamma, calc).map_err(|e| e.in_stage("sigma"))?;
    let riemann = riemann(&christoffel, &sigma, gamma, calc).map_err(|e| e.in_stage("riemann"))?;
    let ricci = ricci(&riemann);
    let (scalar, einstein) = match metric {
        Some(g) => {
            check_dim(calc.dim(), g.dim()).map_err(|e| e.in_stage("scalar"))?;
            let s = ricci_scalar(&ricci, g.inverse());
            let e = einstein(&ricci, &s, g);
            (Some(s), Some(e))
        }
        None => (None, None),
    };
    Ok(CurvatureBundle { christoffel, riemann, ricci, scalar, einstein })
}
