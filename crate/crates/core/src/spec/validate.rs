//! Semantic checks on a parsed spec.

use std::fmt;

use serde::Serialize;

use super::{AlgebraSpec, Element, GenRef, GeneratorKind, Mode};
use crate::quantum::{QuantumElem, Rewriter, DEFAULT_FUEL};

/// One problem found by [`validate_spec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Short stable identifier, e.g. `e-commutativity`.
    pub kind: &'static str,
    /// The pair or generator concerned.
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.kind, self.subject, self.detail)
    }
}

fn is_zero(e: &Element) -> bool {
    match e {
        Element::Poisson(x) => x.is_zero(),
        Element::Quantum(x) => x.is_zero(),
    }
}

/// Checks table totality and orientation, commutativity of the
/// exponential-capable generators, and (quantum mode) coverage and
/// consistency of the reorder rules. An empty list means the spec is sound.
pub fn validate_spec(spec: &AlgebraSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = spec.n_gens();
    let name = |i: usize| spec.gen_name(i).to_string();
    let pair = |a: usize, b: usize| format!("{}, {}", name(a), name(b));

    for b in &spec.brackets {
        let mode_ok = matches!(
            (&b.value, spec.mode),
            (Element::Poisson(_), Mode::Poisson) | (Element::Quantum(_), Mode::Quantum)
        );
        if !mode_ok {
            out.push(Violation {
                kind: "mode",
                subject: pair(b.left, b.right),
                detail: format!("entry is not a {} element", spec.mode),
            });
        }
        if b.left == b.right && !is_zero(&b.value) {
            let e = spec.generators[b.left].kind == GeneratorKind::Exponential;
            out.push(Violation {
                kind: if e { "e-commutativity" } else { "antisymmetry" },
                subject: pair(b.left, b.right),
                detail: format!("self bracket is {}", b.value.render(&spec.layout)),
            });
        }
    }
    for a in 0..n {
        for b in a..n {
            let count = spec
                .brackets
                .iter()
                .filter(|e| (e.left == a && e.right == b) || (e.left == b && e.right == a))
                .count();
            if count > 1 {
                out.push(Violation {
                    kind: "orientation",
                    subject: pair(a, b),
                    detail: format!("{} entries for one unordered pair", count),
                });
            }
            if count == 0 && a != b {
                out.push(Violation {
                    kind: "totality",
                    subject: pair(a, b),
                    detail: "missing bracket entry".to_string(),
                });
            }
            let both_e = matches!((spec.refs[a], spec.refs[b]), (GenRef::E(_), GenRef::E(_)));
            if both_e && a != b {
                if let Some((v, _)) = spec.bracket_entry(a, b) {
                    if !is_zero(v) {
                        out.push(Violation {
                            kind: "e-commutativity",
                            subject: pair(a, b),
                            detail: format!("exponential-capable generators must commute, got {}", v.render(&spec.layout)),
                        });
                    }
                }
            }
        }
    }
    if !spec.coproduct.is_empty() {
        for g in 0..n {
            if !spec.coproduct.contains_key(&g) {
                out.push(Violation {
                    kind: "totality",
                    subject: name(g),
                    detail: "missing coproduct entry".to_string(),
                });
            }
        }
    }
    if spec.mode == Mode::Quantum && spec.n_e() > 0 && out.is_empty() {
        check_reorder(spec, &mut out);
    }
    out
}

/// Each rule must reproduce `X * E_i = E_i * X - [E_i, X]`.
fn check_reorder(spec: &AlgebraSpec, out: &mut Vec<Violation>) {
    let mut missing = false;
    for o in 0..spec.n_ord() {
        if !spec.reorder.contains_key(&o) {
            missing = true;
            out.push(Violation {
                kind: "reorder-coverage",
                subject: spec.layout.ord_names[o].clone(),
                detail: "no rule moves this generator past functions of the exponential-capable generators".to_string(),
            });
        }
    }
    if missing {
        return;
    }
    let mut rw = match Rewriter::new(spec) {
        Ok(rw) => rw,
        Err(e) => {
            out.push(Violation {
                kind: "reorder-consistency",
                subject: spec.name.clone(),
                detail: e.to_string(),
            });
            return;
        }
    };
    let n_e = spec.n_e();
    for o in 0..spec.n_ord() {
        let xg = spec.decl_index(GenRef::Ord(o));
        let x = QuantumElem::generator(1, n_e, 0, o);
        for i in 0..n_e {
            let eg = spec.decl_index(GenRef::E(i));
            let e = QuantumElem::exp_var(1, n_e, 0, i);
            let lhs = x.mul(&e);
            let rhs = match spec.quantum_bracket_value(eg, xg) {
                Ok(b) => e.mul(&x).sub(&b),
                Err(err) => {
                    out.push(Violation {
                        kind: "reorder-consistency",
                        subject: format!("{}, {}", spec.gen_name(eg), spec.gen_name(xg)),
                        detail: err.to_string(),
                    });
                    continue;
                }
            };
            match rw.normalize(&lhs.sub(&rhs), DEFAULT_FUEL) {
                Ok(d) if d.is_zero() => {}
                Ok(d) => out.push(Violation {
                    kind: "reorder-consistency",
                    subject: format!("{}, {}", spec.gen_name(xg), spec.gen_name(eg)),
                    detail: format!("rule disagrees with the bracket table by {}", d.render(&spec.layout)),
                }),
                Err(err) => out.push(Violation {
                    kind: "reorder-consistency",
                    subject: format!("{}, {}", spec.gen_name(xg), spec.gen_name(eg)),
                    detail: err.to_string(),
                }),
            }
        }
    }
}
