use super::*;
use crate::ring::{cosh_linear, int, rat, sinh_linear};

fn load(family: &str, mode: Mode) -> AlgebraSpec {
    catalog_load(family, mode).unwrap_or_else(|e| panic!("{} {}: {}", family, mode, e))
}

fn all_entries() -> Vec<AlgebraSpec> {
    catalog_entries()
        .iter()
        .map(|e| load(e.family, e.mode))
        .collect()
}

#[test]
fn every_catalog_entry_parses_and_validates() {
    for spec in all_entries() {
        let v = validate_spec(&spec);
        assert!(v.is_empty(), "{} {}: {:?}", spec.name, spec.mode, v);
    }
}

#[test]
fn render_round_trips() {
    for spec in all_entries() {
        let text = spec.render();
        let back = AlgebraSpec::parse(&text).unwrap_or_else(|e| panic!("{}\n{}", e, text));
        assert_eq!(back, spec, "{}", text);
    }
}

#[test]
fn quantum_and_poisson_entries_share_generators() {
    for family in catalog_families() {
        let q = load(family, Mode::Quantum);
        let p = load(family, Mode::Poisson);
        assert_eq!(q.layout, p.layout);
        let kinds = |s: &AlgebraSpec| {
            s.generators
                .iter()
                .map(|g| (g.name.clone(), g.kind))
                .collect::<Vec<_>>()
        };
        assert_eq!(kinds(&q), kinds(&p));
    }
}

#[test]
fn su2_standard_bracket_is_two_exponentials() {
    let spec = load("su2_standard", Mode::Poisson);
    assert_eq!(spec.n_e(), 1);
    let f12 = spec.gen_index("F12").unwrap();
    let f21 = spec.gen_index("F21").unwrap();
    let v = spec.poisson_bracket_value(f12, f21).unwrap();
    let half_inv_z = CoeffElem::z_pow(1, -1).scale(&rat(1, 2));
    let expected = CoeffElem::exp_linear(vec![int(2)], int(0), int(0))
        .mul(&half_inv_z)
        .sub(&CoeffElem::exp_linear(vec![int(-2)], int(0), int(0)).mul(&half_inv_z));
    assert_eq!(v.as_coeff().unwrap(), expected);
    assert_eq!(v.as_coeff().unwrap().len(), 2);
}

#[test]
fn su3_poisson_bracket_f12_f21() {
    let spec = load("su3", Mode::Poisson);
    let a = spec.gen_index("F12").unwrap();
    let b = spec.gen_index("F21").unwrap();
    let v = spec.poisson_bracket_value(a, b).unwrap();
    let expected = sinh_linear(vec![int(1), int(-1), int(0)], int(0), int(0)).mul(&CoeffElem::z_pow(3, -1));
    assert_eq!(v.as_coeff().unwrap(), expected);
}

#[test]
fn su2_nonstandard_quantum_bracket_h_f12() {
    let spec = load("su2_nonstandard", Mode::Quantum);
    let h = spec.gen_index("H").unwrap();
    let f12 = spec.gen_index("F12").unwrap();
    assert_eq!(spec.generators[f12].kind, GeneratorKind::Exponential);
    let v = spec.quantum_bracket_value(h, f12).unwrap();
    let expected = sinh_linear(vec![int(1)], int(0), int(0))
        .mul(&CoeffElem::z_pow(1, -1))
        .mul(&CoeffElem::hbar(1));
    assert_eq!(v.as_coeff().unwrap(), expected);
}

#[test]
fn su2_standard_poisson_casimir() {
    let spec = load("su2_standard", Mode::Poisson);
    let c = spec.casimir("C").unwrap();
    let expected = spec.parse_element("sinh(z*H)^2/z^2 + F12*F21").unwrap();
    assert_eq!(c.forms, vec![expected]);
    let s = sinh_linear(vec![int(1)], int(0), int(0));
    let coeff = s.mul(&s).mul(&CoeffElem::z_pow(1, -2));
    let p = c.forms[0].as_poisson().unwrap();
    assert_eq!(p.terms().next().unwrap().1, &coeff);
}

#[test]
fn su2_standard_weights_come_from_the_table() {
    let spec = load("su2_standard", Mode::Quantum);
    let f12 = spec.gen_index("F12").unwrap();
    let f21 = spec.gen_index("F21").unwrap();
    assert_eq!(spec.generators[f12].weight, Some(vec![int(1)]));
    assert_eq!(spec.generators[f21].weight, Some(vec![int(-1)]));
    assert_eq!(
        spec.reorder[&0],
        ReorderRule::Shift {
            hbar_shift: vec![int(-1)],
            const_shift: vec![int(0)]
        }
    );
}

#[test]
fn nonstandard_differential_rules_parse() {
    let spec = load("su2_nonstandard", Mode::Quantum);
    let h = spec.layout.lookup("H").unwrap();
    let GenRef::Ord(h) = h else { panic!() };
    match &spec.reorder[&h] {
        ReorderRule::Differential(terms) => {
            assert_eq!(terms.len(), 2);
            assert_eq!((terms[0].order, terms[0].word.clone()), (0, vec![h]));
            assert!(terms[0].coeff.is_one());
            assert_eq!(terms[1].order, 1);
            let g = sinh_linear(vec![int(1)], int(0), int(0))
                .mul(&CoeffElem::z_pow(1, -1))
                .mul(&CoeffElem::hbar(1));
            assert_eq!(terms[1].coeff, g);
        }
        other => panic!("{:?}", other),
    }
}

#[test]
fn cosh_with_hbar_shift_parses() {
    let spec = load("su3", Mode::Quantum);
    let e = spec.parse_element("cosh(z*(H1 - H2 + hbar/2))").unwrap();
    let expected = cosh_linear(vec![int(1), int(-1), int(0)], rat(1, 2), int(0));
    assert_eq!(e.as_quantum().unwrap().as_coeff().unwrap(), expected);
}

#[test]
fn lie_bialgebra_data_is_antisymmetric() {
    for spec in all_entries() {
        let d = spec.lie_bialgebra_data().unwrap();
        let n = d.names.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(d.f[i][j][k], -d.f[j][i][k].clone());
                    assert_eq!(d.c[i][j][k], -d.c[i][k][j].clone());
                }
            }
        }
    }
}

const SMALL: &str = "\
algebra small
mode poisson

generators
  H exp
  X
  Y

brackets
  {H, X} = X
  {H, Y} = -Y
  {X, Y} = sinh(2*z*H)/z
";

#[test]
fn nonlinear_exponent_is_rejected() {
    let src = SMALL.replace("sinh(2*z*H)/z", "exp(z*H*H)");
    assert!(matches!(AlgebraSpec::parse(&src), Err(Error::NonLinearExpArgument(_))));
}

#[test]
fn missing_pair_is_incomplete() {
    let src = SMALL.replace("  {X, Y} = sinh(2*z*H)/z\n", "");
    match AlgebraSpec::parse(&src) {
        Err(Error::IncompleteTable { table, entry }) => {
            assert_eq!(table, "bracket");
            assert_eq!(entry, "(X, Y)");
        }
        other => panic!("{:?}", other),
    }
}

#[test]
fn su3_missing_pair_is_incomplete() {
    let src = catalog_source("su3", Mode::Quantum).unwrap();
    let start = src.find("  [F13, F31]").unwrap();
    let end = src[start..].find("\n\n").unwrap() + start;
    let cut = format!("{}{}", &src[..start], &src[end + 1..]);
    match AlgebraSpec::parse(&cut) {
        Err(Error::IncompleteTable { entry, .. }) => assert_eq!(entry, "(F13, F31)"),
        other => panic!("{:?}", other),
    }
}

#[test]
fn unknown_generator_is_reported() {
    let src = SMALL.replace("{X, Y} = sinh(2*z*H)/z", "{X, Y} = W");
    assert_eq!(AlgebraSpec::parse(&src), Err(Error::UnknownGenerator("W".into())));
}

#[test]
fn syntax_errors_carry_positions() {
    let src = SMALL.replace("{H, X} = X", "{H, X} = X +");
    match AlgebraSpec::parse(&src) {
        Err(Error::Syntax { line, .. }) => assert_eq!(line, 10),
        other => panic!("{:?}", other),
    }
    let src = SMALL.replace("{H, X} = X", "{H X} = X");
    match AlgebraSpec::parse(&src) {
        Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (10, 6)),
        other => panic!("{:?}", other),
    }
}

#[test]
fn unknown_catalog_entry() {
    assert!(matches!(catalog_load("so5", Mode::Quantum), Err(Error::UnknownCatalogEntry(_))));
}

#[test]
fn nonzero_self_bracket_of_exponential_generator_is_a_violation() {
    let src = SMALL.replace("  {H, X} = X\n", "  {H, X} = X\n  {H, H} = X\n");
    let spec = AlgebraSpec::parse(&src).unwrap();
    let v = validate_spec(&spec);
    assert_eq!(v.len(), 1, "{:?}", v);
    assert_eq!(v[0].kind, "e-commutativity");
}

#[test]
fn missing_reorder_rule_is_a_violation() {
    let src = catalog_source("su2_standard", Mode::Quantum)
        .unwrap()
        .replace("  F21 : shift\n", "");
    let spec = AlgebraSpec::parse(&src).unwrap();
    let v = validate_spec(&spec);
    assert_eq!(v.len(), 1, "{:?}", v);
    assert_eq!(v[0].kind, "reorder-coverage");
    assert_eq!(v[0].subject, "F21");
}

#[test]
fn wrong_differential_rule_is_a_violation() {
    let src = catalog_source("su2_nonstandard", Mode::Quantum)
        .unwrap()
        .replace("f*H + hbar*sinh(z*F12)/z*f'", "f*H + hbar*f'");
    let spec = AlgebraSpec::parse(&src).unwrap();
    let v = validate_spec(&spec);
    assert!(v.iter().any(|x| x.kind == "reorder-consistency"), "{:?}", v);
}

#[test]
fn double_entry_is_an_orientation_violation() {
    let src = SMALL.replace("  {H, X} = X\n", "  {H, X} = X\n  {X, H} = -X\n");
    let spec = AlgebraSpec::parse(&src).unwrap();
    let v = validate_spec(&spec);
    assert_eq!(v[0].kind, "orientation");
}

#[test]
fn scalars_broadcast_over_tensor_legs() {
    let spec = load("su2_standard", Mode::Poisson);
    let a = spec.parse_element("2*(H ⊗ F12)").unwrap();
    let b = spec.parse_element("H ⊗ F12 + H <x> F12").unwrap();
    assert_eq!(a, b);
    let w = spec.parse_element("H ∧ F12").unwrap();
    let t = spec.parse_element("H ⊗ F12 - F12 ⊗ H").unwrap();
    assert_eq!(w, t);
}
