//! Line-oriented evaluation of user expressions against one algebra.
//!
//! Each non-blank line that does not start with `#` is one of
//!
//! ```text
//! <expr>                normal form (quantum) or canonical form (Poisson)
//! [<expr>, <expr>]      commutator, quantum mode
//! {<expr>, <expr>}      Poisson bracket, Poisson mode
//! coproduct(<expr>)     coproduct of a one-leg element
//! ```

use super::report::Evaluation;
use crate::error::{Error, Result};
use crate::poisson;
use crate::quantum;
use crate::spec::{AlgebraSpec, Element, Mode};

/// Splits `a, b` at the single comma outside parentheses.
fn split_pair(body: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut at = None;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                if at.is_some() {
                    return None;
                }
                at = Some(i);
            }
            _ => {}
        }
    }
    at.map(|i| (body[..i].trim(), body[i + 1..].trim()))
}

fn strip<'a>(line: &'a str, open: &str, close: char) -> Option<&'a str> {
    line.strip_prefix(open)?.strip_suffix(close)
}

fn render(spec: &AlgebraSpec, e: &Element) -> String {
    e.render(&spec.layout)
}

fn normal_form(spec: &AlgebraSpec, e: Element, fuel: u64) -> Result<Element> {
    match e {
        Element::Quantum(x) => Ok(Element::Quantum(quantum::normal_order(spec, &x, fuel)?)),
        p => Ok(p),
    }
}

fn one_line(spec: &AlgebraSpec, line: &str, fuel: u64) -> (&'static str, Result<Element>) {
    let (open, close) = match spec.mode {
        Mode::Quantum => ("[", ']'),
        Mode::Poisson => ("{", '}'),
    };
    if let Some(body) = strip(line, open, close) {
        let r = (|| {
            let (a, b) = split_pair(body)
                .ok_or_else(|| Error::InvalidSpec(format!("expected two comma-separated operands in `{}`", line)))?;
            let (x, y) = (spec.parse_element(a)?, spec.parse_element(b)?);
            match spec.mode {
                Mode::Quantum => Ok(Element::Quantum(quantum::q_commutator(
                    spec,
                    x.as_quantum()?,
                    y.as_quantum()?,
                    fuel,
                )?)),
                Mode::Poisson => Ok(Element::Poisson(poisson::p_bracket(spec, x.as_poisson()?, y.as_poisson()?)?)),
            }
        })();
        return ("bracket", r);
    }
    if let Some(body) = strip(line, "coproduct(", ')') {
        let r = (|| {
            let x = spec.parse_element(body)?;
            match spec.mode {
                Mode::Quantum => Ok(Element::Quantum(quantum::coproduct(spec, x.as_quantum()?, fuel)?)),
                Mode::Poisson => Ok(Element::Poisson(poisson::coproduct(spec, x.as_poisson()?)?)),
            }
        })();
        return ("coproduct", r);
    }
    ("normal-form", spec.parse_element(line).and_then(|e| normal_form(spec, e, fuel)))
}

/// Evaluates every line of `source`; errors are kept per line.
pub fn evaluate(spec: &AlgebraSpec, source: &str, fuel: u64) -> Vec<Evaluation> {
    let mut out = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (operation, r) = one_line(spec, line, fuel);
        let (value, error) = match r {
            Ok(e) => (Some(render(spec, &e)), None),
            Err(e) => (None, Some(e.to_string())),
        };
        out.push(Evaluation {
            line: i + 1,
            input: line.to_string(),
            operation,
            value,
            error,
        });
    }
    out
}
