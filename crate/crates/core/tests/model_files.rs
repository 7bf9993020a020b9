//! The shipped model files: round trips, reports and determinism.

use std::fs;
use std::path::PathBuf;

use serde_json::Value as Json;

use nccurv::io::{parse_model, render, render_model, run_pipeline, Format, PipelineOptions, Target};
use nccurv::models::bicrossproduct_model;
use nccurv::Error;

fn model_files() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models");
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "model"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    assert!(out.len() >= 5, "expected the fixture models in {}", dir.display());
    out
}

#[test]
fn parse_render_parse_is_a_fixpoint() {
    for (name, text) in model_files() {
        let first = parse_model(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let rendered = render_model(&first.spec);
        let second = parse_model(&rendered).unwrap();
        assert_eq!(first.spec, second.spec, "{name}");
        assert!(second.notices.is_empty(), "{name}: {:?}", second.notices);
        assert_eq!(render_model(&second.spec), rendered, "{name}");
    }
}

#[test]
fn exported_fixture_matches_the_shipped_file() {
    let text = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/bicrossproduct.model")).unwrap();
    assert_eq!(render_model(&bicrossproduct_model()), text);
    assert_eq!(parse_model(&text).unwrap().spec, bicrossproduct_model());
}

#[test]
fn metric_only_model_gets_levi_civita_and_solved_s() {
    let (_, text) = model_files().into_iter().find(|(n, _)| n == "bicrossproduct-metric").unwrap();
    let spec = parse_model(&text).unwrap().spec;
    let report = run_pipeline(&spec, &[Target::Christoffel], &PipelineOptions::default()).unwrap();
    assert!(report.provenance.iter().any(|p| p.contains("Levi-Civita")));
    assert!(report.provenance.iter().any(|p| p.contains("S: solved")));
    let fixture = run_pipeline(&bicrossproduct_model(), &[Target::Christoffel], &PipelineOptions::default()).unwrap();
    assert_eq!(report.tensor("christoffel"), fixture.tensor("christoffel"));
}

#[test]
fn json_report_round_trips() {
    for (name, text) in model_files() {
        let spec = parse_model(&text).unwrap().spec;
        let ns = spec.namespace.clone();
        let report = run_pipeline(&spec, &Target::ALL, &PipelineOptions::default()).unwrap();
        let json: Json = serde_json::from_str(&render(&report, Format::Json)).unwrap();
        assert_eq!(json["schema"], "nccurv-report/1");
        let entries = json["entries"].as_array().unwrap();
        assert_eq!(entries.len(), report.entries.len(), "{name}");
        for (e, entry) in entries.iter().zip(&report.entries) {
            let back = |v: &Json| {
                let o0 = ns.parse(v["order0"].as_str().unwrap()).unwrap();
                let o1 = ns.parse(v["order1"].as_str().unwrap()).unwrap();
                &o0 + &(&nccurv::expr::GradedExpr::lambda() * &o1)
            };
            match &entry.value {
                nccurv::io::Value::Scalar(s) => assert_eq!(&back(&e["scalar"]), s, "{name} {}", entry.name),
                nccurv::io::Value::Tensor(t) => {
                    let comps = e["tensor"]["components"].as_object().unwrap();
                    assert_eq!(e["tensor"]["zero"], t.is_zero());
                    assert_eq!(comps.len(), t.nonzero().count());
                    for (key, v) in comps {
                        let idx: Vec<usize> = key.split(',').map(|k| k.parse().unwrap()).collect();
                        assert_eq!(&back(v), t.get(&idx), "{name} {} {key}", entry.name);
                    }
                }
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    for (name, text) in model_files() {
        let run = || {
            let spec = parse_model(&text).unwrap().spec;
            let report = run_pipeline(&spec, &Target::ALL, &PipelineOptions::default()).unwrap();
            [Format::Plain, Format::Latex, Format::Json].map(|f| render(&report, f))
        };
        assert_eq!(run(), run(), "{name}");
    }
}

#[test]
fn commutative_models_have_no_first_order_part() {
    for (name, text) in model_files() {
        let spec = parse_model(&text).unwrap().spec;
        if !spec.c.is_zero() {
            continue;
        }
        let report = run_pipeline(&spec, &Target::ALL, &PipelineOptions::default()).unwrap();
        for e in &report.entries {
            if let nccurv::io::Value::Tensor(t) = &e.value {
                assert!(t.quantum().is_zero(), "{name} {}", e.name);
            }
        }
    }
}

#[test]
fn conflicting_constants_name_both_lines() {
    let text = "dimension: 2\ncoordinates: t, x\nmetric: 0 0 = 1\nmetric: 1 1 = 1\nC: 0 1 1 = lambda\nC: 1 0 1 = lambda\n";
    match parse_model(text) {
        Err(Error::Model(errs)) => {
            assert_eq!(errs.len(), 1, "{errs:?}");
            assert_eq!(errs[0].line, 6);
            assert!(errs[0].message.contains("line 5") && errs[0].message.contains("line 6"), "{errs:?}");
        }
        other => panic!("expected a model error, got {other:?}"),
    }
}

#[test]
fn one_sided_metric_entry_is_mirrored() {
    let text = "dimension: 2\ncoordinates: t, x\nmetric: 0 0 = 1\nmetric: 0 1 = t\nmetric: 1 1 = 1\n";
    let parsed = parse_model(text).unwrap();
    let g = parsed.spec.metric.unwrap();
    assert_eq!(g.get(1, 0), g.get(0, 1));
    assert_eq!(parsed.notices.len(), 1);
    assert!(parsed.notices[0].contains("mirrored"));
}
