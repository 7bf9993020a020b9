//! Exact expression kernel.
//!
//! Every value is held in canonical form: a reduced quotient of polynomials
//! with rational coefficients, split into a classical part and a part
//! proportional to the deformation symbol. Equality of values is structural
//! equality of canonical forms.

mod graded;
mod parse;
mod poly;
mod ratfunc;
mod render;

use std::collections::BTreeSet;

pub use graded::GradedExpr;
pub use poly::{Monomial, Poly, Symbol};
pub use ratfunc::RatFunc;

use crate::error::Error;

/// Ordered, named spacetime coordinates. Index order fixes the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    names: Vec<String>,
}

impl CoordinateSystem {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, Error> {
        if names.is_empty() {
            return Err(Error::Invalid("a coordinate system needs at least one coordinate".into()));
        }
        let mut seen = BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::Invalid(format!("`{n}` is not a valid identifier")));
            }
            if !seen.insert(n) {
                return Err(Error::Invalid(format!("coordinate `{n}` declared twice")));
            }
        }
        Ok(CoordinateSystem { names: names.iter().map(|n| n.as_ref().to_owned()).collect() })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub const DEFAULT_DEFORMATION_SYMBOL: &str = "lambda";

/// Commuting model parameters and the name of the deformation symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterTable {
    names: BTreeSet<String>,
    deformation_symbol: String,
}

impl Default for ParameterTable {
    fn default() -> Self {
        ParameterTable { names: BTreeSet::new(), deformation_symbol: DEFAULT_DEFORMATION_SYMBOL.into() }
    }
}

impl ParameterTable {
    pub fn new<S: AsRef<str>>(names: &[S], deformation_symbol: &str) -> Result<Self, Error> {
        let mut set = BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::Invalid(format!("`{n}` is not a valid identifier")));
            }
            if !set.insert(n.to_owned()) {
                return Err(Error::Invalid(format!("parameter `{n}` declared twice")));
            }
        }
        if !is_identifier(deformation_symbol) {
            return Err(Error::Invalid(format!("`{deformation_symbol}` is not a valid identifier")));
        }
        if set.contains(deformation_symbol) {
            return Err(Error::Invalid(format!(
                "`{deformation_symbol}` is both a parameter and the deformation symbol"
            )));
        }
        Ok(ParameterTable { names: set, deformation_symbol: deformation_symbol.to_owned() })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    pub fn deformation_symbol(&self) -> &str {
        &self.deformation_symbol
    }
}

/// Coordinates and parameters together; resolves identifiers for parsing
/// and names symbols for rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Namespace {
    coords: CoordinateSystem,
    params: ParameterTable,
}

impl Namespace {
    pub fn new(coords: CoordinateSystem, params: ParameterTable) -> Result<Self, Error> {
        for c in coords.names() {
            if params.contains(c) {
                return Err(Error::Invalid(format!("`{c}` is both a coordinate and a parameter")));
            }
            if c == params.deformation_symbol() {
                return Err(Error::Invalid(format!("`{c}` is both a coordinate and the deformation symbol")));
            }
        }
        Ok(Namespace { coords, params })
    }

    pub fn coords(&self) -> &CoordinateSystem {
        &self.coords
    }

    pub fn params(&self) -> &ParameterTable {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn symbol_name(&self, s: &Symbol) -> String {
        match s {
            Symbol::Coord(i) => self.coords.names.get(*i).cloned().unwrap_or_else(|| format!("x{i}")),
            Symbol::Param(p) => p.to_string(),
        }
    }

    /// Parses the expression grammar into a canonical value.
    pub fn parse(&self, text: &str) -> Result<GradedExpr, Error> {
        parse::parse_expr(self, text)
    }

    pub fn render(&self, e: &GradedExpr) -> String {
        render::plain(self, e)
    }

    pub fn render_latex(&self, e: &GradedExpr) -> String {
        render::latex(self, e)
    }
}

/// Canonical form. Values are kept canonical by construction, so this is a copy.
pub fn normalize(e: &GradedExpr) -> GradedExpr {
    e.clone()
}

pub fn partial(e: &GradedExpr, mu: usize, dim: usize) -> Result<GradedExpr, Error> {
    if mu >= dim {
        return Err(Error::IndexOutOfRange { index: mu, dim });
    }
    Ok(e.partial(mu))
}

pub fn equal(a: &GradedExpr, b: &GradedExpr) -> bool {
    (a - b).is_zero()
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns() -> Namespace {
        Namespace::new(
            CoordinateSystem::new(&["t", "x"]).unwrap(),
            ParameterTable::new(&["b"], "lambda").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn normalize_examples() {
        let ns = ns();
        let e = ns.parse("(1+b*t^2)/x - 1/x - b*t^2/x").unwrap();
        assert!(normalize(&e).is_zero());
        assert_eq!(ns.parse("x*x^-1").unwrap(), GradedExpr::one());
        assert!(ns.parse("(t^2 - t*t) + lambda*0").unwrap().is_zero());
        assert_eq!(normalize(&normalize(&e)), normalize(&e));
    }

    #[test]
    fn partial_examples() {
        let ns = ns();
        let p = |s: &str| ns.parse(s).unwrap();
        assert_eq!(partial(&p("x^-2"), 1, 2).unwrap(), p("-2*x^-3"));
        assert_eq!(partial(&p("2*b*t^2"), 0, 2).unwrap(), p("4*b*t"));
        assert_eq!(partial(&p("x^-1*(1+2*b*t^2)"), 0, 2).unwrap(), p("4*b*t*x^-1"));
        assert!(matches!(partial(&p("t"), 2, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn equal_examples() {
        let ns = ns();
        let p = |s: &str| ns.parse(s).unwrap();
        assert!(equal(&p("t + lambda/2*1"), &p("t + lambda/2")));
        assert!(!equal(&p("x"), &p("x + lambda*x")));
        assert!(equal(&p("(x^2-t^2)/(x-t)"), &p("x+t")));
    }

    #[test]
    fn namespace_rejects_clashes() {
        let c = CoordinateSystem::new(&["t", "b"]).unwrap();
        let p = ParameterTable::new(&["b"], "lambda").unwrap();
        assert!(Namespace::new(c, p).is_err());
        assert!(CoordinateSystem::new(&["t", "t"]).is_err());
        assert!(CoordinateSystem::new(&["1t"]).is_err());
        assert!(ParameterTable::new(&["lambda"], "lambda").is_err());
    }
}
