//! Line-oriented model files.
//!
//! ```text
//! # comment
//! name: bicrossproduct
//! dimension: 2
//! coordinates: t, x
//! parameters: b
//! deformation_symbol: lambda
//! C: 1 0 1 = lambda
//! S: 0 0 0 = -lambda
//! metric: 0 0 = b*x^2
//! christoffel: 1 0 0 = -2*b*x
//! note: metric = where the metric comes from
//! ```
//!
//! Indices are integers or coordinate names. Unlisted entries are zero. A
//! missing mirror entry (`C` antisymmetric, `S` and `metric` symmetric,
//! `christoffel` symmetric in its lower pair) is filled in with a notice.

use std::collections::BTreeMap;

use crate::algebra::{StructureConstants, SymmetricPart};
use crate::curvature::Connection;
use crate::error::{Error, ParseError};
use crate::expr::{CoordinateSystem, GradedExpr, Namespace, ParameterTable, DEFAULT_DEFORMATION_SYMBOL};
use crate::metric::Metric;
use crate::models::ModelSpec;
use crate::tensor::Tensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedModel {
    pub spec: ModelSpec,
    /// Non-fatal remarks such as mirrored entries.
    pub notices: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Field {
    C,
    S,
    Metric,
    Christoffel,
}

impl Field {
    fn key(self) -> &'static str {
        match self {
            Field::C => "C",
            Field::S => "S",
            Field::Metric => "metric",
            Field::Christoffel => "christoffel",
        }
    }

    fn rank(self) -> usize {
        match self {
            Field::Metric => 2,
            _ => 3,
        }
    }

    /// The mirrored index and whether the mirror is negated.
    fn mirror(self, idx: &[usize]) -> (Vec<usize>, bool) {
        match self {
            Field::C => (vec![idx[1], idx[0], idx[2]], true),
            Field::S => (vec![idx[1], idx[0], idx[2]], false),
            Field::Metric => (vec![idx[1], idx[0]], false),
            Field::Christoffel => (vec![idx[0], idx[2], idx[1]], false),
        }
    }
}

struct RawEntry {
    line: usize,
    index_col: usize,
    indices: Vec<String>,
    expr_col: usize,
    expr: String,
}

struct Entry {
    line: usize,
    value: GradedExpr,
}

fn fmt_idx(field: Field, idx: &[usize]) -> String {
    let inner: String = idx.iter().map(|i| format!("[{i}]")).collect();
    format!("{}{inner}", field.key())
}

/// Parses a model file, collecting every located error.
pub fn parse_model(text: &str) -> Result<ParsedModel, Error> {
    let mut errors = Vec::new();
    let mut header: BTreeMap<&str, (usize, usize, String)> = BTreeMap::new();
    let mut raw: Vec<(Field, RawEntry)> = Vec::new();
    let mut notes: BTreeMap<String, String> = BTreeMap::new();

    for (n, full) in text.lines().enumerate() {
        let line = n + 1;
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            errors.push(ParseError::new(line, 1, "expected `key: value`"));
            continue;
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        let value_col = colon + 2 + (rest.len() - rest.trim_start().len());
        let value = rest.trim();
        let field = match key {
            "C" => Some(Field::C),
            "S" => Some(Field::S),
            "metric" => Some(Field::Metric),
            "christoffel" => Some(Field::Christoffel),
            _ => None,
        };
        if let Some(field) = field {
            let Some(eq) = value.find('=') else {
                errors.push(ParseError::new(line, value_col, "expected `indices = expression`"));
                continue;
            };
            let after = &value[eq + 1..];
            raw.push((
                field,
                RawEntry {
                    line,
                    index_col: value_col,
                    indices: value[..eq].split_whitespace().map(str::to_owned).collect(),
                    expr_col: value_col + eq + 1 + (after.len() - after.trim_start().len()),
                    expr: after.trim().to_owned(),
                },
            ));
            continue;
        }
        match key {
            "name" | "dimension" | "coordinates" | "parameters" | "deformation_symbol" => {
                if let Some((first, _, _)) = header.get(key) {
                    errors.push(ParseError::new(line, 1, format!("`{key}` already given on line {first}")));
                } else {
                    header.insert(key, (line, value_col, value.to_owned()));
                }
            }
            "note" => match value.split_once('=') {
                Some((f, t)) => {
                    notes.insert(f.trim().to_owned(), t.trim().to_owned());
                }
                None => errors.push(ParseError::new(line, value_col, "expected `field = text`")),
            },
            other => errors.push(ParseError::new(line, 1, format!("unknown key `{other}`"))),
        }
    }

    let list = |s: &str| -> Vec<String> {
        s.split(',').map(|p| p.trim().to_owned()).filter(|p| !p.is_empty()).collect()
    };
    let name = header.get("name").map(|h| h.2.clone()).unwrap_or_else(|| "unnamed".into());
    let coords = match header.get("coordinates") {
        Some((line, col, v)) => match CoordinateSystem::new(&list(v)) {
            Ok(c) => Some(c),
            Err(e) => {
                errors.push(ParseError::new(*line, *col, e.to_string()));
                None
            }
        },
        None => {
            errors.push(ParseError::new(0, 0, "missing `coordinates`"));
            None
        }
    };
    if let (Some((line, col, v)), Some(c)) = (header.get("dimension"), &coords) {
        match v.parse::<usize>() {
            Ok(d) if d == c.dim() => {}
            Ok(d) => errors.push(ParseError::new(
                *line,
                *col,
                format!("dimension {d} does not match {} coordinates", c.dim()),
            )),
            Err(_) => errors.push(ParseError::new(*line, *col, "dimension must be a positive integer")),
        }
    }
    let deformation = header.get("deformation_symbol").map(|h| h.2.clone());
    let params = {
        let names = header.get("parameters").map(|h| list(&h.2)).unwrap_or_default();
        let sym = deformation.as_deref().unwrap_or(DEFAULT_DEFORMATION_SYMBOL);
        match ParameterTable::new(&names, sym) {
            Ok(p) => Some(p),
            Err(e) => {
                let (line, col) = header.get("parameters").map(|h| (h.0, h.1)).unwrap_or((0, 0));
                errors.push(ParseError::new(line, col, e.to_string()));
                None
            }
        }
    };
    let ns = match (coords, params) {
        (Some(c), Some(p)) => match Namespace::new(c, p) {
            Ok(ns) => ns,
            Err(e) => {
                errors.push(ParseError::new(0, 0, e.to_string()));
                return Err(Error::Model(errors));
            }
        },
        _ => return Err(Error::Model(errors)),
    };
    let dim = ns.dim();

    let mut tables: BTreeMap<&'static str, BTreeMap<Vec<usize>, Entry>> = BTreeMap::new();
    for (field, e) in &raw {
        let table = tables.entry(field.key()).or_default();
        if e.indices.len() != field.rank() {
            errors.push(ParseError::new(
                e.line,
                e.index_col,
                format!("`{}` entries take {} indices, found {}", field.key(), field.rank(), e.indices.len()),
            ));
            continue;
        }
        let mut idx = Vec::new();
        for s in &e.indices {
            match s.parse::<usize>().ok().or_else(|| ns.coords().index_of(s)) {
                Some(i) if i < dim => idx.push(i),
                _ => {
                    errors.push(ParseError::new(e.line, e.index_col, format!("index `{s}` out of range for dimension {dim}")));
                    break;
                }
            }
        }
        if idx.len() != field.rank() {
            continue;
        }
        let value = match ns.parse(&e.expr) {
            Ok(v) => v,
            Err(Error::Parse(p)) => {
                errors.push(ParseError::new(e.line, e.expr_col + p.column.saturating_sub(1), p.message));
                continue;
            }
            Err(other) => {
                errors.push(ParseError::new(e.line, e.expr_col, other.to_string()));
                continue;
            }
        };
        let problem = match field {
            Field::C if !value.is_zero() && value.as_lambda_multiple().is_none() => {
                Some("structure constants must be rational multiples of the deformation symbol")
            }
            Field::S if !value.is_pure_grade1() || value.has_coords() => {
                Some("S entries must be first order in the deformation symbol and free of coordinates")
            }
            Field::Metric | Field::Christoffel if !value.order1().is_zero() => {
                Some("must not depend on the deformation symbol")
            }
            Field::C if idx[0] == idx[1] && !value.is_zero() => Some("C must vanish when its first two indices agree"),
            _ => None,
        };
        if let Some(msg) = problem {
            errors.push(ParseError::new(e.line, e.expr_col, msg));
            continue;
        }
        if let Some(prev) = table.get(&idx) {
            errors.push(ParseError::new(
                e.line,
                e.index_col,
                format!("duplicate entry {}, first given on line {}", fmt_idx(*field, &idx), prev.line),
            ));
            continue;
        }
        table.insert(idx, Entry { line: e.line, value });
    }

    let mut notices = Vec::new();
    let mut tensors: BTreeMap<&'static str, (Tensor, usize)> = BTreeMap::new();
    for field in [Field::C, Field::S, Field::Metric, Field::Christoffel] {
        let Some(table) = tables.get(field.key()) else { continue };
        let mut t = Tensor::zeros(dim, field.rank());
        for (idx, e) in table {
            t.set(idx, e.value.clone());
        }
        for (idx, e) in table {
            let (m, neg) = field.mirror(idx);
            if &m == idx {
                continue;
            }
            let want = if neg { -&e.value } else { e.value.clone() };
            match table.get(&m) {
                Some(other) if other.value != want => {
                    if idx < &m {
                        errors.push(ParseError::new(
                            other.line,
                            1,
                            format!(
                                "{} on line {} and {} on line {} are not {}",
                                fmt_idx(field, idx),
                                e.line,
                                fmt_idx(field, &m),
                                other.line,
                                if neg { "antisymmetric" } else { "symmetric" }
                            ),
                        ));
                    }
                }
                Some(_) => {}
                None => {
                    if !want.is_zero() {
                        notices.push((e.line, format!(
                            "line {}: {} mirrored from {}",
                            e.line,
                            fmt_idx(field, &m),
                            fmt_idx(field, idx)
                        )));
                    }
                    t.set(&m, want);
                }
            }
        }
        let first_line = table.values().map(|e| e.line).min().unwrap_or(0);
        tensors.insert(field.key(), (t, first_line));
    }
    if !errors.is_empty() {
        errors.sort_by_key(|e| (e.line, e.column));
        return Err(Error::Model(errors));
    }

    let located = |line: usize, e: Error| Error::Model(vec![ParseError::new(line, 1, e.to_string())]);
    let c = match tensors.remove("C") {
        Some((t, line)) => StructureConstants::new(t).map_err(|e| located(line, e))?,
        None => StructureConstants::zero(dim),
    };
    let s = match tensors.remove("S") {
        Some((t, line)) => Some(SymmetricPart::new(t).map_err(|e| located(line, e))?),
        None => None,
    };
    let metric = match tensors.remove("metric") {
        Some((t, line)) => Some(Metric::new(t).map_err(|e| located(line, e))?),
        None => None,
    };
    let christoffel = match tensors.remove("christoffel") {
        Some((t, line)) => Some(Connection::new(t).map_err(|e| located(line, e))?),
        None => None,
    };
    let mut spec = ModelSpec::new(name, ns, c, s, metric, christoffel).map_err(|e| located(0, e))?;
    spec.notes = notes;
    notices.sort();
    let notices = notices.into_iter().map(|(_, n)| n).collect();
    Ok(ParsedModel { spec, notices })
}

/// Canonical text of a model; every nonzero entry is written out so the
/// result parses back without notices.
pub fn render_model(spec: &ModelSpec) -> String {
    let ns = &spec.namespace;
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", spec.name));
    out.push_str(&format!("dimension: {}\n", spec.dim()));
    out.push_str(&format!("coordinates: {}\n", ns.coords().names().join(", ")));
    out.push_str(&format!("parameters: {}\n", ns.params().names().collect::<Vec<_>>().join(", ")));
    out.push_str(&format!("deformation_symbol: {}\n", ns.params().deformation_symbol()));
    for (field, text) in &spec.notes {
        out.push_str(&format!("note: {field} = {text}\n"));
    }
    let mut section = |key: &str, t: &Tensor| {
        let mut first = true;
        for (idx, v) in t.nonzero() {
            if first {
                out.push('\n');
                first = false;
            }
            let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
            out.push_str(&format!("{key}: {} = {}\n", idx.join(" "), ns.render(v)));
        }
    };
    section("C", spec.c.tensor());
    if let Some(s) = &spec.s {
        section("S", s.tensor());
    }
    if let Some(g) = &spec.metric {
        section("metric", g.tensor());
    }
    if let Some(g) = &spec.christoffel {
        section("christoffel", g.tensor());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::bicrossproduct_model;

    fn errors(text: &str) -> Vec<ParseError> {
        match parse_model(text) {
            Err(Error::Model(e)) => e,
            other => panic!("expected model errors, got {other:?}"),
        }
    }

    const HEAD: &str = "dimension: 2\ncoordinates: t, x\nparameters: b\n";

    #[test]
    fn bicrossproduct_round_trip() {
        let m = bicrossproduct_model();
        let text = render_model(&m);
        let parsed = parse_model(&text).unwrap();
        assert_eq!(parsed.spec, m);
        assert!(parsed.notices.is_empty());
        assert_eq!(render_model(&parsed.spec), text);
    }

    #[test]
    fn antisymmetry_error_names_both_lines() {
        let e = errors(&format!("{HEAD}C: 0 1 1 = lambda\nC: 1 0 1 = lambda\nmetric: 0 0 = 1\nmetric: 1 1 = 1\n"));
        assert_eq!(e.len(), 1);
        assert!(e[0].message.contains("line 4") && e[0].message.contains("line 5"), "{}", e[0]);
        assert!(e[0].message.contains("antisymmetric"));
    }

    #[test]
    fn metric_is_mirrored() {
        let p = parse_model(&format!("{HEAD}metric: 0 1 = t\nmetric: 0 0 = 1\n")).unwrap();
        let g = p.spec.metric.unwrap();
        assert_eq!(g.get(1, 0), &GradedExpr::coord(0));
        assert_eq!(p.notices.len(), 1);
        assert!(p.notices[0].contains("metric[1][0]"));
    }

    #[test]
    fn errors_are_located() {
        let e = errors(&format!("{HEAD}metric: 0 0 = 1 + y\nmetric: 2 2 = 1\nfoo: 3\nmetric: 1 1 = 2 x\n"));
        let at: Vec<(usize, usize)> = e.iter().map(|e| (e.line, e.column)).collect();
        assert_eq!(at, vec![(4, 19), (5, 9), (6, 1), (7, 17)]);
    }

    #[test]
    fn value_kinds_are_checked() {
        let e = errors(&format!("{HEAD}C: 0 1 0 = t*lambda\nS: 0 0 0 = 1\nmetric: 0 0 = lambda\n"));
        assert_eq!(e.len(), 3);
        let e = errors(&format!("{HEAD}metric: 0 0 = 1\nmetric: 0 0 = 2\n"));
        assert!(e[0].message.contains("duplicate"));
    }

    #[test]
    fn header_errors() {
        assert!(!errors("dimension: 3\ncoordinates: t, x\nmetric: 0 0 = 1\n").is_empty());
        assert!(!errors("metric: 0 0 = 1\n").is_empty());
        assert!(!errors("coordinates: t, t\n").is_empty());
        assert!(!errors("coordinates: t\nparameters: t\nmetric: 0 0 = 1\n").is_empty());
        assert!(!errors("coordinates: t\nmetric: 0 0 = 0\n").is_empty());
    }

    #[test]
    fn named_indices_and_comments() {
        let p = parse_model("# flat\ncoordinates: t, x  # two\nmetric: t t = 1\nmetric: x x = 1\n").unwrap();
        assert_eq!(p.spec.metric.unwrap().get(1, 1), &GradedExpr::one());
    }
}
