//! Model specifications and the built-in bicrossproduct fixture.

use std::collections::BTreeMap;

use crate::algebra::{rational, validate_algebra, Calculus, OneForm, StructureConstants, SymmetricPart, TwoTensor};
use crate::curvature::{connection_centrality_check, quantum_christoffel, Connection};
use crate::error::Error;
use crate::expr::{CoordinateSystem, GradedExpr, Namespace, ParameterTable};
use crate::metric::{classical_christoffel, solve_symmetric_part, Metric, SolveOutcome, SolveReport};
use crate::tensor::Tensor;

/// Everything needed to run the curvature pipeline on one spacetime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub name: String,
    pub namespace: Namespace,
    pub c: StructureConstants,
    /// When absent it is solved from the metric.
    pub s: Option<SymmetricPart>,
    pub metric: Option<Metric>,
    pub christoffel: Option<Connection>,
    /// Free-text provenance per field.
    pub notes: BTreeMap<String, String>,
}

impl ModelSpec {
    pub fn new(
        name: impl Into<String>,
        namespace: Namespace,
        c: StructureConstants,
        s: Option<SymmetricPart>,
        metric: Option<Metric>,
        christoffel: Option<Connection>,
    ) -> Result<Self, Error> {
        let dim = namespace.dim();
        let dims = [
            Some(c.dim()),
            s.as_ref().map(SymmetricPart::dim),
            metric.as_ref().map(Metric::dim),
            christoffel.as_ref().map(Connection::dim),
        ];
        for found in dims.into_iter().flatten() {
            if found != dim {
                return Err(Error::DimensionMismatch { expected: dim, found });
            }
        }
        match (&metric, &christoffel) {
            (None, None) => return Err(Error::Invalid("a model needs a metric or christoffel symbols".into())),
            (Some(g), Some(gamma)) => {
                let lc = classical_christoffel(g);
                if &lc != gamma {
                    let bad = lc.tensor().diff_indices(gamma.tensor());
                    return Err(Error::Invariant(format!(
                        "christoffel symbols differ from the Levi-Civita connection of the metric at {bad:?}"
                    )));
                }
            }
            _ => {}
        }
        if let Some(gamma) = &christoffel {
            if !gamma.is_classical() {
                return Err(Error::Invariant("christoffel symbols must not depend on the deformation symbol".into()));
            }
        }
        Ok(ModelSpec { name: name.into(), namespace, c, s, metric, christoffel, notes: BTreeMap::new() })
    }

    pub fn with_note(mut self, field: &str, text: &str) -> Self {
        self.notes.insert(field.to_owned(), text.to_owned());
        self
    }

    pub fn dim(&self) -> usize {
        self.namespace.dim()
    }

    /// The calculus of the model. A missing `S` is solved from the metric;
    /// the solve report is returned alongside in that case.
    pub fn calculus(&self) -> Result<(Calculus, Option<SolveReport>), Error> {
        if let Some(s) = &self.s {
            return Ok((Calculus::new(self.c.clone(), s)?, None));
        }
        let g = self
            .metric
            .as_ref()
            .ok_or_else(|| Error::Invalid("S is not given and there is no metric to solve it from".into()))?;
        let report = solve_symmetric_part(g, &self.c)?;
        let s = match &report.outcome {
            SolveOutcome::NoSolution { .. } => {
                return Err(Error::Invalid("the centrality condition has no solution for S".into()))
            }
            SolveOutcome::Unique(s) | SolveOutcome::Family { particular: s, .. } => s.clone(),
        };
        Ok((Calculus::new(self.c.clone(), &s)?, Some(report)))
    }

    /// The given classical connection, or the Levi-Civita connection of the metric.
    pub fn classical_connection(&self) -> Connection {
        match (&self.christoffel, &self.metric) {
            (Some(gamma), _) => gamma.clone(),
            (None, Some(g)) => classical_christoffel(g),
            (None, None) => unreachable!("checked on construction"),
        }
    }
}

fn bicross_namespace() -> Namespace {
    Namespace::new(
        CoordinateSystem::new(&["t", "x"]).expect("valid"),
        ParameterTable::new(&["b"], "lambda").expect("valid"),
    )
    .expect("disjoint")
}

fn parse_all(ns: &Namespace, dim: usize, rank: usize, src: &[&str]) -> Tensor {
    let mut it = src.iter();
    Tensor::from_fn(dim, rank, |_| ns.parse(it.next().expect("enough entries")).expect("fixture parses"))
}

/// The two-dimensional model with `[x, t] = λx`, its differential calculus
/// `[x, dt] = λdx`, `[t, dt] = λdt`, and the classical connection it is
/// paired with.
pub fn bicrossproduct_model() -> ModelSpec {
    let ns = bicross_namespace();
    let c = StructureConstants::from_entries(2, &[(1, 0, 1, rational(1, 1)), (0, 1, 1, rational(-1, 1))])
        .expect("valid");
    let s = parse_all(&ns, 2, 3, &["-lambda", "0", "0", "-lambda/2", "0", "-lambda/2", "0", "0"]);
    let metric = parse_all(&ns, 2, 2, &["b*x^2", "-b*t*x", "-b*t*x", "1 + b*t^2"]);
    let gamma = parse_all(
        &ns,
        2,
        3,
        &[
            "-2*b*t",
            "(1 + 2*b*t^2)/x",
            "(1 + 2*b*t^2)/x",
            "-2*t*(1 + b*t^2)/x^2",
            "-2*b*x",
            "2*b*t",
            "2*b*t",
            "-2*b*t^2/x",
        ],
    );
    ModelSpec::new(
        "bicrossproduct",
        ns,
        c,
        Some(SymmetricPart::new(s).expect("symmetric")),
        Some(Metric::new(metric).expect("invertible")),
        Some(Connection::new(gamma).expect("symmetric")),
    )
    .expect("consistent fixture")
    .with_note("C", "[x, t] = lambda x")
    .with_note("S", "fixed by [x, dt] = lambda dx and [t, dt] = lambda dt")
    .with_note("christoffel", "published classical connection of the model")
    .with_note("metric", "fixture b v(x)v + dx(x)dx with v = x dt - t dx; its Levi-Civita connection equals the given christoffel symbols")
}

/// The expected corrected `Γ̃^x_{ρσ}` of the bicrossproduct model.
pub fn bicrossproduct_corrected_x() -> [[GradedExpr; 2]; 2] {
    let ns = bicross_namespace();
    let p = |s: &str| ns.parse(s).expect("valid");
    [
        [p("-2*b*x"), p("2*b*(t + lambda/2)")],
        [p("2*b*(t + lambda/2)"), p("-2*b*t*(t + lambda)/x")],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Offending components when the check fails.
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn compare(ns: &Namespace, label: &str, got: &Tensor, want: &Tensor) -> Vec<String> {
    got.diff_indices(want)
        .into_iter()
        .map(|i| {
            format!(
                "{label}{i:?}: got {}, expected {}",
                ns.render(got.get(&i)),
                ns.render(want.get(&i))
            )
        })
        .collect()
}

fn check(name: &'static str, detail: Vec<String>) -> Check {
    Check { name, passed: detail.is_empty(), detail }
}

/// `∇₀(dt)` and `∇₀(dx)` from the central one-form `v = x dt − t dx`.
pub fn v_basis_connection() -> [TwoTensor; 2] {
    let ns = bicross_namespace();
    let p = |s: &str| ns.parse(s).expect("valid");
    let v = OneForm(Tensor::from_fn(2, 1, |i| if i[0] == 0 { p("x") } else { p("-t") }));
    let dx = OneForm::basis(2, 1);
    let vv = TwoTensor::outer(&v, &v).0;
    let vdx = TwoTensor::outer(&v, &dx).0;
    let dxv = TwoTensor::outer(&dx, &v).0;
    let nabla_dt = vdx.scale_by(&p("-1")).add(&vv.scale_by(&p("2*b*t"))).sub(&dxv).scale_by(&p("x^-2"));
    let nabla_dx = vv.scale_by(&p("2*b/x"));
    [TwoTensor(nabla_dt), TwoTensor(nabla_dx)]
}

/// Runs the bicrossproduct model end to end and compares every published value exactly.
pub fn verify_bicrossproduct() -> VerificationReport {
    let model = bicrossproduct_model();
    let ns = &model.namespace;
    let p = |s: &str| ns.parse(s).expect("valid");
    let mut checks = Vec::new();

    let report = validate_algebra(&model.c);
    checks.push(check("algebra", report.messages()));

    let (calc, _) = model.calculus().expect("fixture calculus");
    let expected_d = Tensor::from_fn(2, 3, |i| if i == [0, 0, 0] || i == [0, 1, 1] { p("-lambda") } else { p("0") });
    checks.push(check("d-tensor", compare(ns, "D", calc.d_tensor().tensor(), &expected_d)));

    let gamma = model.classical_connection();
    let nabla = |k: usize| TwoTensor(gamma.component(k).0.scale_by(&p("-1")));
    let mut detail = Vec::new();
    let cases = [
        ("[t, nabla(dt)]", 0, 0, nabla(0).0.scale_by(&p("2*lambda"))),
        ("[x, nabla(dt)]", 1, 0, nabla(1).0.scale_by(&p("lambda"))),
        ("[t, nabla(dx)]", 0, 1, nabla(1).0.scale_by(&p("lambda"))),
        ("[x, nabla(dx)]", 1, 1, Tensor::zeros(2, 2)),
    ];
    for (label, mu, k, want) in cases {
        match calc.tensor_commutator(mu, &nabla(k)) {
            Ok(got) => detail.extend(compare(ns, label, &got.0, &want)),
            Err(e) => detail.push(format!("{label}: {e}")),
        }
    }
    checks.push(check("commutators", detail));

    let mut detail = Vec::new();
    match quantum_christoffel(&gamma, &calc) {
        Ok(gt) => {
            let want = bicrossproduct_corrected_x();
            let want = Tensor::from_fn(2, 2, |i| want[i[0]][i[1]].clone());
            detail.extend(compare(ns, "corrected Gamma^x", &gt.component(1).0, &want));
            detail.extend(compare(ns, "classical part", &gt.classical().tensor().clone(), gamma.tensor()));
        }
        Err(e) => detail.push(e.to_string()),
    }
    checks.push(check("corrected-christoffel", detail));

    let [dt, dx] = v_basis_connection();
    let mut detail = compare(ns, "nabla(dt)", &dt.0, &nabla(0).0);
    detail.extend(compare(ns, "nabla(dx)", &dx.0, &nabla(1).0));
    checks.push(check("v-basis", detail));

    let central = connection_centrality_check(&gamma, &calc).map(|r| r.is_central()).unwrap_or(true);
    checks.push(check(
        "non-central",
        if central { vec!["classical connection unexpectedly central".into()] } else { Vec::new() },
    ));

    VerificationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_values() {
        let m = bicrossproduct_model();
        let (calc, solved) = m.calculus().unwrap();
        assert!(solved.is_none());
        assert_eq!(calc.d_tensor().get(0, 0, 0), &GradedExpr::lambda().scale(&rational(-1, 1)));
        assert!(calc.d_tensor().get(1, 0, 1).is_zero());
        assert_eq!(m.classical_connection().get(1, 0, 0), &m.namespace.parse("-2*b*x").unwrap());
    }

    #[test]
    fn s_solved_from_fixture_metric_matches() {
        let mut m = bicrossproduct_model();
        let given = m.s.take().unwrap();
        let (calc, solved) = m.calculus().unwrap();
        assert!(solved.is_some());
        assert_eq!(calc, Calculus::new(m.c.clone(), &given).unwrap());
    }

    #[test]
    fn verification_passes() {
        let r = verify_bicrossproduct();
        for c in &r.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.detail);
        }
    }

    #[test]
    fn spec_requires_a_geometry() {
        let m = bicrossproduct_model();
        let err = ModelSpec::new("x", m.namespace.clone(), m.c.clone(), None, None, None);
        assert!(err.is_err());
        let wrong = Connection::zero(2);
        assert!(ModelSpec::new("x", m.namespace, m.c, None, m.metric, Some(wrong)).is_err());
    }
}
