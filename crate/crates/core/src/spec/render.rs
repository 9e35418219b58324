//! Canonical definition source for a parsed spec.

use std::fmt::Write;

use super::{AlgebraSpec, GeneratorKind, Mode, ReorderRule};
use crate::ring::{push_signed_term, RingKey};

fn rule_source(spec: &AlgebraSpec, rule: &ReorderRule) -> String {
    let terms = match rule {
        ReorderRule::Shift { .. } => return "shift".to_string(),
        ReorderRule::Differential(terms) => terms,
    };
    if terms.is_empty() {
        return "0".to_string();
    }
    let names: Vec<&str> = spec.layout.e_names.iter().map(String::as_str).collect();
    let mut out = String::new();
    let mut first = true;
    for t in terms {
        for (k, q) in t.coeff.terms() {
            let mut factors = factors_of(k, &names);
            factors.push(format!("f{}", "'".repeat(t.order as usize)));
            factors.extend(t.word.iter().map(|&g| spec.layout.ord_names[g].clone()));
            push_signed_term(&mut out, first, q, &factors);
            first = false;
        }
    }
    out
}

fn factors_of(k: &RingKey, names: &[&str]) -> Vec<String> {
    let mut f = crate::ring::render_scalar_factors(k);
    f.extend(crate::ring::render_leg_factors(k, names, 0));
    f
}

pub(crate) fn render_spec(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    let l = &spec.layout;
    let _ = writeln!(out, "algebra {}", spec.name);
    let _ = writeln!(out, "mode {}", spec.mode);
    if !l.ord_names.is_empty() {
        let _ = writeln!(out, "order {}", l.ord_names.join(" "));
    }
    out.push_str("\ngenerators\n");
    for g in &spec.generators {
        match g.kind {
            GeneratorKind::Exponential => {
                let _ = writeln!(out, "  {} exp", g.name);
            }
            GeneratorKind::Ordinary => {
                let _ = writeln!(out, "  {}", g.name);
            }
        }
    }
    let (open, close) = match spec.mode {
        Mode::Quantum => ('[', ']'),
        Mode::Poisson => ('{', '}'),
    };
    if !spec.brackets.is_empty() {
        out.push_str("\nbrackets\n");
        for b in &spec.brackets {
            let _ = writeln!(
                out,
                "  {}{}, {}{} = {}",
                open,
                spec.gen_name(b.left),
                spec.gen_name(b.right),
                close,
                b.value.render(l)
            );
        }
    }
    if !spec.reorder.is_empty() {
        out.push_str("\nreorder\n");
        for (&o, rule) in &spec.reorder {
            let _ = writeln!(out, "  {} : {}", l.ord_names[o], rule_source(spec, rule));
        }
    }
    if !spec.coproduct.is_empty() {
        out.push_str("\ncoproduct\n");
        for (&g, v) in &spec.coproduct {
            let _ = writeln!(out, "  {} = {}", spec.gen_name(g), v.render(l));
        }
    }
    if !spec.lie.is_empty() {
        out.push_str("\nlie\n");
        for e in &spec.lie {
            let _ = writeln!(
                out,
                "  [{}, {}] = {}",
                spec.gen_name(e.left),
                spec.gen_name(e.right),
                e.value.render(l)
            );
        }
    }
    if !spec.cobracket.is_empty() {
        out.push_str("\ncobracket\n");
        for (&g, v) in &spec.cobracket {
            let _ = writeln!(out, "  {} = {}", spec.gen_name(g), v.render(l));
        }
    }
    if !spec.casimirs.is_empty() {
        out.push_str("\ncasimirs\n");
        for c in &spec.casimirs {
            for form in &c.forms {
                let _ = writeln!(out, "  {} = {}", c.name, form.render(l));
            }
        }
    }
    out
}
