//! Runs the requested computations on a model and collects a report.

use std::time::{Duration, Instant};

use crate::algebra::validate_algebra;
use crate::curvature::{
    convention_hash, quantum_christoffel, ricci, ricci_asymmetry, ricci_scalar, riemann, sigma_tensor, einstein,
};
use crate::error::Error;
use crate::expr::{GradedExpr, Namespace};
use crate::metric::{centrality_residual, SolveOutcome};
use crate::models::{bicrossproduct_model, verify_bicrossproduct, ModelSpec};
use crate::tensor::Tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Centrality,
    SolveS,
    Christoffel,
    Riemann,
    Ricci,
    Scalar,
    Einstein,
}

impl Target {
    pub const ALL: [Target; 7] = [
        Target::Centrality,
        Target::SolveS,
        Target::Christoffel,
        Target::Riemann,
        Target::Ricci,
        Target::Scalar,
        Target::Einstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Centrality => "centrality",
            Target::SolveS => "solve-s",
            Target::Christoffel => "christoffel",
            Target::Riemann => "riemann",
            Target::Ricci => "ricci",
            Target::Scalar => "scalar",
            Target::Einstein => "einstein",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Treat Jacobi or antisymmetry violations as errors.
    pub strict: bool,
    /// Report only the classical Christoffel symbols.
    pub classical_christoffel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Tensor(Tensor),
    Scalar(GradedExpr),
}

/// One computed quantity with its display symbol and index placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub name: String,
    /// Plain symbol, e.g. `Gamma~`.
    pub symbol: &'static str,
    pub latex: &'static str,
    /// How many leading indices are upper.
    pub upper: usize,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub model: String,
    pub namespace: Namespace,
    pub conventions: String,
    pub provenance: Vec<String>,
    pub checks: Vec<ReportCheck>,
    pub entries: Vec<ReportEntry>,
    /// Wall time per stage. Not rendered, so output stays reproducible.
    pub timings: Vec<(String, Duration)>,
}

impl TensorReport {
    fn new(spec: &ModelSpec) -> Self {
        TensorReport {
            model: spec.name.clone(),
            namespace: spec.namespace.clone(),
            conventions: convention_hash(),
            provenance: spec.notes.iter().map(|(k, v)| format!("{k}: {v}")).collect(),
            checks: Vec::new(),
            entries: Vec::new(),
            timings: Vec::new(),
        }
    }

    /// True when every check passed.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn tensor(&self, name: &str) -> Option<&Tensor> {
        match &self.entry(name)?.value {
            Value::Tensor(t) => Some(t),
            Value::Scalar(_) => None,
        }
    }

    fn push(&mut self, name: &str, symbol: &'static str, latex: &'static str, upper: usize, value: Value) {
        self.entries.push(ReportEntry { name: name.to_owned(), symbol, latex, upper, value });
    }
}

struct Timer<'a> {
    report: &'a mut Vec<(String, Duration)>,
}

impl Timer<'_> {
    fn run<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T, Error>) -> Result<T, Error> {
        let start = Instant::now();
        let out = f().map_err(|e| e.in_stage(stage));
        self.report.push((stage.to_owned(), start.elapsed()));
        out
    }
}

fn describe_indices(ns: &Namespace, idx: &[usize]) -> String {
    idx.iter().map(|&i| ns.coords().name(i)).collect::<Vec<_>>().join(",")
}

/// Computes the requested targets and whatever they depend on.
pub fn run_pipeline(spec: &ModelSpec, targets: &[Target], opts: &PipelineOptions) -> Result<TensorReport, Error> {
    let mut report = TensorReport::new(spec);
    let mut timings = Vec::new();
    let mut timer = Timer { report: &mut timings };
    let wants = |t: Target| targets.contains(&t);
    let ns = spec.namespace.clone();

    let algebra = validate_algebra(&spec.c);
    if !algebra.is_valid() {
        if opts.strict {
            return Err(Error::Invariant(algebra.messages().join("; ")).in_stage("algebra"));
        }
        report.provenance.extend(algebra.messages().into_iter().map(|m| format!("warning: {m}")));
    }

    if wants(Target::SolveS) {
        let g = spec
            .metric
            .as_ref()
            .ok_or_else(|| Error::Invalid("solving for S needs a metric".into()).in_stage("solve-s"))?;
        let solved = timer.run("solve-s", || crate::metric::solve_symmetric_part(g, &spec.c))?;
        let mut detail: Vec<String> = solved
            .assumptions
            .iter()
            .map(|p| format!("assumed nonzero: {}", ns.render(&crate::expr::RatFunc::from(p.clone()).into())))
            .collect();
        let passed = match &solved.outcome {
            SolveOutcome::Unique(s) => {
                detail.insert(0, "unique solution".into());
                report.push("S", "S", "S", 2, Value::Tensor(s.tensor().clone()));
                true
            }
            SolveOutcome::Family { particular, directions } => {
                detail.insert(0, format!("{} free direction(s)", directions.len()));
                report.push("S", "S", "S", 2, Value::Tensor(particular.tensor().clone()));
                for (i, d) in directions.iter().enumerate() {
                    report.push(&format!("S-direction-{}", i + 1), "S", "S", 2, Value::Tensor(d.tensor().clone()));
                }
                true
            }
            SolveOutcome::NoSolution { inconsistent } => {
                detail.insert(0, "no solution".into());
                detail.extend(inconsistent.iter().map(|e| {
                    let m = crate::expr::RatFunc::from(crate::expr::Poly::term(
                        num_rational::BigRational::from_integer(1.into()),
                        e.monomial.clone(),
                    ));
                    format!(
                        "inconsistent: coefficient of {} in E[{}]",
                        ns.render(&m.into()),
                        describe_indices(&ns, &e.component)
                    )
                }));
                false
            }
        };
        report.checks.push(ReportCheck { name: "solve-s".into(), passed, detail });
    }

    let needs_calculus = targets.iter().any(|t| *t != Target::SolveS);
    if !needs_calculus {
        report.timings = timings;
        return Ok(report);
    }
    let (calc, solved) = timer.run("calculus", || spec.calculus())?;
    if solved.is_some() {
        report.provenance.push("S: solved from the metric".into());
    }

    if wants(Target::Centrality) {
        let g = spec
            .metric
            .as_ref()
            .ok_or_else(|| Error::Invalid("the centrality check needs a metric".into()).in_stage("centrality"))?;
        let residual = timer.run("centrality", || centrality_residual(g, &calc))?;
        let detail = residual
            .nonzero()
            .map(|(i, v)| format!("E[{}] = {}", describe_indices(&ns, &i), ns.render(v)))
            .collect::<Vec<_>>();
        report.checks.push(ReportCheck { name: "centrality".into(), passed: detail.is_empty(), detail });
        report.push("centrality", "E", "E", 1, Value::Tensor(residual));
    }

    let curvature_targets = [Target::Christoffel, Target::Riemann, Target::Ricci, Target::Scalar, Target::Einstein];
    if !curvature_targets.iter().any(|t| wants(*t)) {
        report.timings = timings;
        return Ok(report);
    }
    if spec.christoffel.is_none() {
        report.provenance.push("christoffel: Levi-Civita connection of the metric".into());
    }
    let gamma = spec.classical_connection();
    if wants(Target::Christoffel) && opts.classical_christoffel {
        report.push("christoffel", "Gamma", "\\Gamma", 1, Value::Tensor(gamma.tensor().clone()));
    }
    let corrected = timer.run("christoffel", || quantum_christoffel(&gamma, &calc))?;
    if wants(Target::Christoffel) && !opts.classical_christoffel {
        report.push("christoffel", "Gamma~", "\\tilde{\\Gamma}", 1, Value::Tensor(corrected.tensor().clone()));
    }
    if ![Target::Riemann, Target::Ricci, Target::Scalar, Target::Einstein].iter().any(|t| wants(*t)) {
        report.timings = timings;
        return Ok(report);
    }
    let riem = timer.run("riemann", || {
        let sigma = sigma_tensor(&gamma, &calc)?;
        riemann(&corrected, &sigma, &gamma, &calc)
    })?;
    let ric = ricci(&riem);
    if wants(Target::Riemann) {
        report.push("riemann", "R~", "\\tilde{R}", 1, Value::Tensor(riem.clone()));
    }
    if wants(Target::Ricci) {
        let asym = ricci_asymmetry(&ric);
        if !asym.is_empty() {
            report.provenance.push(format!(
                "ricci: not symmetric at {}",
                asym.iter().map(|p| format!("({})", describe_indices(&ns, p))).collect::<Vec<_>>().join(" ")
            ));
        }
        report.push("ricci", "R~", "\\tilde{R}", 0, Value::Tensor(ric.clone()));
    }
    if wants(Target::Scalar) || wants(Target::Einstein) {
        let g = spec
            .metric
            .as_ref()
            .ok_or_else(|| Error::Invalid("the Ricci scalar needs a metric".into()).in_stage("scalar"))?;
        let scalar = ricci_scalar(&ric, g.inverse());
        if wants(Target::Scalar) {
            report.push("scalar", "R~", "\\tilde{R}", 0, Value::Scalar(scalar.clone()));
        }
        if wants(Target::Einstein) {
            report.push("einstein", "G~", "\\tilde{G}", 0, Value::Tensor(einstein(&ric, &scalar, g)));
        }
    }
    report.timings = timings;
    Ok(report)
}

/// The bicrossproduct verification as a report: the corrected connection
/// plus one check per published identity.
pub fn verification_report() -> Result<TensorReport, Error> {
    let model = bicrossproduct_model();
    let mut report = run_pipeline(&model, &[Target::Christoffel], &PipelineOptions::default())?;
    report.checks.extend(verify_bicrossproduct().checks.into_iter().map(|c| ReportCheck {
        name: c.name.to_owned(),
        passed: c.passed,
        detail: c.detail,
    }));
    Ok(report)
}

/// Checks that a model is usable: the algebra, and that its calculus can be
/// built (solving for `S` when it is not given).
pub fn validate_model(spec: &ModelSpec, opts: &PipelineOptions) -> Result<TensorReport, Error> {
    let mut report = run_pipeline(spec, &[], opts)?;
    let algebra = validate_algebra(&spec.c);
    report.checks.push(ReportCheck { name: "algebra".into(), passed: true, detail: algebra.messages() });
    let detail = match spec.calculus() {
        Ok((_, Some(_))) => Ok(vec!["S solved from the metric".to_owned()]),
        Ok((_, None)) => Ok(Vec::new()),
        Err(e) => Err(e),
    };
    match detail {
        Ok(detail) => report.checks.push(ReportCheck { name: "calculus".into(), passed: true, detail }),
        Err(e) => report.checks.push(ReportCheck { name: "calculus".into(), passed: false, detail: vec![e.to_string()] }),
    }
    Ok(report)
}
