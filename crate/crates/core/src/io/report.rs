//! Plain text, LaTeX and JSON renderings of a [`TensorReport`].

use serde_json::{json, Map, Value as Json};

use super::pipeline::{ReportEntry, TensorReport, Value};
use crate::expr::{GradedExpr, Namespace};
use crate::tensor::Tensor;

pub const JSON_SCHEMA: &str = "nccurv-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

pub fn render(report: &TensorReport, format: Format) -> String {
    match format {
        Format::Plain => plain(report),
        Format::Latex => latex(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json_value(report)).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn names(ns: &Namespace, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| ns.coords().name(i).to_owned()).collect()
}

fn plain(report: &TensorReport) -> String {
    let ns = &report.namespace;
    let mut out = format!("model: {}\nconventions: sha256:{}\n", report.model, report.conventions);
    if !report.provenance.is_empty() {
        out.push_str("provenance:\n");
    }
    for p in &report.provenance {
        out.push_str(&format!("  {p}\n"));
    }
    for c in &report.checks {
        out.push_str(&format!("check {}: {}\n", c.name, if c.passed { "pass" } else { "FAIL" }));
        for d in &c.detail {
            out.push_str(&format!("  {d}\n"));
        }
    }
    for e in &report.entries {
        out.push('\n');
        match &e.value {
            Value::Scalar(v) => out.push_str(&format!("{} {} = {}\n", e.name, e.symbol, ns.render(v))),
            Value::Tensor(t) => {
                out.push_str(&format!("{} {}\n", e.name, e.symbol));
                if t.is_zero() {
                    out.push_str("  all components zero\n");
                }
                for (idx, v) in t.nonzero() {
                    let label: String = names(ns, &idx).iter().map(|n| format!("[{n}]")).collect();
                    out.push_str(&format!("  {}{label} = {}\n", e.symbol, ns.render(v)));
                }
            }
        }
    }
    out
}

fn latex_indices(ns: &Namespace, symbol: &str, upper: usize, idx: &[usize]) -> String {
    let n = names(ns, idx);
    let (up, down) = n.split_at(upper.min(n.len()));
    let mut s = symbol.to_owned();
    if !up.is_empty() {
        s.push_str(&format!("^{{{}}}", up.join(" ")));
    }
    if !down.is_empty() {
        if !up.is_empty() {
            s.push_str("{}");
        }
        s.push_str(&format!("_{{{}}}", down.join(" ")));
    }
    s
}

fn bmatrix(ns: &Namespace, cell: impl Fn(usize, usize) -> GradedExpr, dim: usize) -> String {
    let rows: Vec<String> = (0..dim)
        .map(|r| (0..dim).map(|c| ns.render_latex(&cell(r, c))).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{bmatrix}} {} \\end{{bmatrix}}", rows.join(" \\\\ "))
}

fn latex_entry(ns: &Namespace, e: &ReportEntry, out: &mut String) {
    out.push_str(&format!("% {}\n", e.name));
    match &e.value {
        Value::Scalar(v) => out.push_str(&format!("{} = {}\n", e.latex, ns.render_latex(v))),
        Value::Tensor(t) => {
            let dim = t.dim();
            match (t.rank(), e.upper) {
                (2, 0) => out.push_str(&format!(
                    "{} = {}\n",
                    latex_indices(ns, e.latex, 0, &[]),
                    bmatrix(ns, |r, c| t.get(&[r, c]).clone(), dim)
                )),
                (3, 1) => {
                    for k in 0..dim {
                        out.push_str(&format!(
                            "{} = {}\n",
                            latex_indices(ns, e.latex, 1, &[k]),
                            bmatrix(ns, |r, c| t.get(&[k, r, c]).clone(), dim)
                        ));
                    }
                }
                _ => {
                    if t.is_zero() {
                        out.push_str(&format!("{} = 0\n", e.latex));
                    }
                    for (idx, v) in t.nonzero() {
                        out.push_str(&format!(
                            "{} = {}\n",
                            latex_indices(ns, e.latex, e.upper, &idx),
                            ns.render_latex(v)
                        ));
                    }
                }
            }
        }
    }
}

fn latex(report: &TensorReport) -> String {
    let ns = &report.namespace;
    let mut out = format!("% model: {}\n% conventions: sha256:{}\n", report.model, report.conventions);
    for p in &report.provenance {
        out.push_str(&format!("% {p}\n"));
    }
    for c in &report.checks {
        out.push_str(&format!("% check {}: {}\n", c.name, if c.passed { "pass" } else { "FAIL" }));
        for d in &c.detail {
            out.push_str(&format!("%   {d}\n"));
        }
    }
    for e in &report.entries {
        latex_entry(ns, e, &mut out);
    }
    out
}

fn expr_json(ns: &Namespace, v: &GradedExpr) -> Json {
    json!({
        "order0": ns.render(&v.order0().clone().into()),
        "order1": ns.render(&v.order1().clone().into()),
    })
}

fn tensor_json(ns: &Namespace, t: &Tensor) -> Json {
    let mut comps = Map::new();
    for (idx, v) in t.nonzero() {
        let key = idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        comps.insert(key, expr_json(ns, v));
    }
    json!({
        "dim": t.dim(),
        "rank": t.rank(),
        "zero": t.is_zero(),
        "components": comps,
    })
}

fn json_value(report: &TensorReport) -> Json {
    let ns = &report.namespace;
    let entries: Vec<Json> = report
        .entries
        .iter()
        .map(|e| {
            let mut obj = Map::new();
            obj.insert("name".into(), json!(e.name));
            obj.insert("symbol".into(), json!(e.symbol));
            obj.insert("upper".into(), json!(e.upper));
            match &e.value {
                Value::Scalar(v) => {
                    obj.insert("scalar".into(), expr_json(ns, v));
                }
                Value::Tensor(t) => {
                    obj.insert("tensor".into(), tensor_json(ns, t));
                }
            }
            Json::Object(obj)
        })
        .collect();
    json!({
        "schema": JSON_SCHEMA,
        "model": report.model,
        "conventions": format!("sha256:{}", report.conventions),
        "coordinates": ns.coords().names(),
        "parameters": ns.params().names().collect::<Vec<_>>(),
        "deformation_symbol": ns.params().deformation_symbol(),
        "provenance": report.provenance,
        "ok": report.ok(),
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "entries": entries,
    })
}
