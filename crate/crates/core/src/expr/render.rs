//! Deterministic text and LaTeX rendering of canonical values.
//!
//! Plain output always reparses to the same canonical value. Within a term,
//! parameters are printed before coordinates.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{GradedExpr, Monomial, Namespace, Poly, RatFunc};

#[derive(Clone, Copy)]
enum Style {
    Plain,
    Latex,
}

fn rational(c: &BigRational, style: Style) -> String {
    if c.is_integer() {
        return c.numer().to_string();
    }
    match style {
        Style::Plain => format!("{}/{}", c.numer(), c.denom()),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

fn ordered_factors(m: &Monomial) -> Vec<(super::Symbol, u32)> {
    let (coords, params) = m.split_coords();
    params.factors().iter().chain(coords.factors()).cloned().collect()
}

/// A term with non-negative coefficient, optionally with an extra factor
/// placed right after the coefficient.
fn term_body(ns: &Namespace, c: &BigRational, m: &Monomial, extra: Option<&str>, style: Style) -> String {
    let mut parts = Vec::new();
    if !c.is_one() {
        parts.push(rational(c, style));
    }
    if let Some(e) = extra {
        parts.push(e.to_owned());
    }
    for (s, e) in ordered_factors(m) {
        let name = ns.symbol_name(&s);
        parts.push(match (e, style) {
            (1, _) => name,
            (e, Style::Plain) => format!("{name}^{e}"),
            (e, Style::Latex) => format!("{name}^{{{e}}}"),
        });
    }
    if parts.is_empty() {
        return "1".into();
    }
    match style {
        Style::Plain => parts.join("*"),
        Style::Latex => parts.join(" "),
    }
}

fn poly(ns: &Namespace, p: &Poly, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term_body(ns, &c.abs(), m, None, style));
    }
    out
}

fn is_bare_power(p: &Poly) -> bool {
    match p.leading() {
        Some((m, c)) => p.is_monomial() && c.is_one() && m.factors().len() == 1,
        None => false,
    }
}

fn ratfunc(ns: &Namespace, r: &RatFunc, style: Style) -> String {
    if r.is_polynomial() {
        return poly(ns, r.numer(), style);
    }
    match style {
        Style::Plain => {
            let num = if r.numer().term_count() > 1 {
                format!("({})", poly(ns, r.numer(), style))
            } else {
                poly(ns, r.numer(), style)
            };
            let den = if is_bare_power(r.denom()) {
                poly(ns, r.denom(), style)
            } else {
                format!("({})", poly(ns, r.denom(), style))
            };
            format!("{num}/{den}")
        }
        Style::Latex => {
            let (neg, num) = if r.numer().term_count() == 1 && r.numer().is_negative_leading() {
                (true, poly(ns, &r.numer().neg(), style))
            } else {
                (false, poly(ns, r.numer(), style))
            };
            let frac = format!("\\frac{{{num}}}{{{}}}", poly(ns, r.denom(), style));
            if neg {
                format!("-{frac}")
            } else {
                frac
            }
        }
    }
}

/// Renders `λ·r` as (is_negative, magnitude).
fn lambda_part(ns: &Namespace, r: &RatFunc, style: Style) -> (bool, String) {
    let lam = match style {
        Style::Plain => ns.params().deformation_symbol().to_owned(),
        Style::Latex => latex_symbol(ns.params().deformation_symbol()),
    };
    let single = r.numer().term_count() == 1;
    if single {
        let (m, c) = r.numer().leading().expect("nonzero");
        let body = term_body(ns, &c.abs(), m, Some(&lam), style);
        if r.is_polynomial() {
            return (c.is_negative(), body);
        }
        let den = poly(ns, r.denom(), style);
        return match style {
            Style::Plain if is_bare_power(r.denom()) => (c.is_negative(), format!("{body}/{den}")),
            Style::Plain => (c.is_negative(), format!("{body}/({den})")),
            Style::Latex => (c.is_negative(), format!("\\frac{{{body}}}{{{den}}}")),
        };
    }
    match style {
        Style::Plain => {
            if r.is_polynomial() {
                (false, format!("{lam}*({})", poly(ns, r.numer(), style)))
            } else {
                let den = if is_bare_power(r.denom()) {
                    poly(ns, r.denom(), style)
                } else {
                    format!("({})", poly(ns, r.denom(), style))
                };
                (false, format!("{lam}*({})/{den}", poly(ns, r.numer(), style)))
            }
        }
        Style::Latex => (false, format!("{lam} \\left({}\\right)", ratfunc(ns, r, style))),
    }
}

fn latex_symbol(name: &str) -> String {
    const GREEK: &[&str] = &[
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "kappa", "lambda", "mu", "nu", "xi",
        "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
    ];
    if GREEK.contains(&name) {
        format!("\\{name}")
    } else {
        name.to_owned()
    }
}

fn graded(ns: &Namespace, e: &GradedExpr, style: Style) -> String {
    let o0 = e.order0();
    let o1 = e.order1();
    if o1.is_zero() {
        return ratfunc(ns, o0, style);
    }
    let (neg, body) = lambda_part(ns, o1, style);
    if o0.is_zero() {
        return if neg { format!("-{body}") } else { body };
    }
    let head = ratfunc(ns, o0, style);
    if neg {
        format!("{head} - {body}")
    } else {
        format!("{head} + {body}")
    }
}

pub(super) fn plain(ns: &Namespace, e: &GradedExpr) -> String {
    graded(ns, e, Style::Plain)
}

pub(super) fn latex(ns: &Namespace, e: &GradedExpr) -> String {
    graded(ns, e, Style::Latex)
}
