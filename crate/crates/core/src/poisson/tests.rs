use proptest::prelude::*;

use super::*;
use crate::ring::{int, rat, sinh_linear};
use crate::spec::{catalog_load, Mode};

fn load(family: &str) -> AlgebraSpec {
    catalog_load(family, Mode::Poisson).unwrap()
}

fn el(spec: &AlgebraSpec, text: &str) -> PoissonElem {
    spec.parse_element(text).unwrap().as_poisson().unwrap().clone()
}

fn br(spec: &AlgebraSpec, x: &str, y: &str) -> PoissonElem {
    p_bracket(spec, &el(spec, x), &el(spec, y)).unwrap()
}

#[test]
fn su2_standard_base_bracket() {
    let spec = load("su2_standard");
    let v = br(&spec, "F12", "F21");
    let inv = CoeffElem::z_pow(1, -1).scale(&rat(1, 2));
    let expected = CoeffElem::exp_linear(vec![int(2)], int(0), int(0))
        .sub(&CoeffElem::exp_linear(vec![int(-2)], int(0), int(0)))
        .mul(&inv);
    assert_eq!(v.as_coeff().unwrap(), expected);
    assert!(br(&spec, "H", "H").is_zero());
}

#[test]
fn su3_f13_f31() {
    let spec = load("su3");
    let v = br(&spec, "F13", "F31");
    let expected = el(
        &spec,
        "sinh(z*(H1 - H3))/z + z*sinh(z*(H1 - H2))*F23*F32 + z*sinh(z*(H2 - H3))*F12*F21",
    );
    assert_eq!(v, expected);
}

#[test]
fn su3_leibniz_example() {
    let spec = load("su3");
    assert_eq!(br(&spec, "F12", "F12*F23"), el(&spec, "F12*F13"));
}

#[test]
fn su2_nonstandard_h_f21() {
    let spec = load("su2_nonstandard");
    assert_eq!(br(&spec, "H", "F21"), el(&spec, "-cosh(z*F12)*F21"));
}

#[test]
fn chain_rule_through_exponentials() {
    let spec = load("su2_standard");
    // {exp(zH), F12} = z exp(zH) {H, F12}
    assert_eq!(br(&spec, "exp(z*H)", "F12"), el(&spec, "z*exp(z*H)*F12"));
    assert!(br(&spec, "exp(z*H)", "sinh(3*z*H)").is_zero());
}

#[test]
fn disjoint_legs_commute() {
    let spec = load("su2_standard");
    let x = el(&spec, "exp(z*H) ⊗ 1");
    let y = el(&spec, "1 ⊗ F12");
    assert!(tensor_bracket(&spec, &x, &y).unwrap().is_zero());
}

#[test]
fn tensor_bracket_by_hand() {
    let spec = load("su2_standard");
    let x = el(&spec, "exp(z*H) ⊗ F12");
    let y = el(&spec, "F12 ⊗ exp(-z*H)");
    // {eH, F12} (x) F12 e-H + eH F12 (x) {F12, e-H}, each giving z eH F12 (x) F12 e-H
    let expected = el(&spec, "2*z*(exp(z*H)*F12 ⊗ F12*exp(-z*H))");
    assert_eq!(tensor_bracket(&spec, &x, &y).unwrap(), expected);
}

#[test]
fn leg_mismatch_is_an_error() {
    let spec = load("su2_standard");
    let x = el(&spec, "H ⊗ F12");
    let y = el(&spec, "F12");
    assert_eq!(
        p_bracket(&spec, &x, &y),
        Err(Error::LegMismatch { left: 2, right: 1 })
    );
}

#[test]
fn quantum_spec_is_rejected() {
    let spec = catalog_load("su2_standard", Mode::Quantum).unwrap();
    assert!(matches!(BracketTable::new(&spec), Err(Error::WrongMode { .. })));
}

#[test]
fn coproduct_examples() {
    let spec = load("su3");
    let h1 = spec.gen_index("H1").unwrap();
    let d = coproduct(&spec, &spec.poisson_generator(h1)).unwrap();
    assert_eq!(d, el(&spec, "H1 ⊗ 1 + 1 ⊗ H1"));
    let f13 = spec.gen_index("F13").unwrap();
    let d = coproduct(&spec, &spec.poisson_generator(f13)).unwrap();
    let expected = el(
        &spec,
        "exp(z*(H1 - H3)/2) ⊗ F13 + F13 ⊗ exp(-z*(H1 - H3)/2) \
         + z*(exp(z*(H2 - H3)/2)*F12 ⊗ exp(-z*(H1 - H2)/2)*F23 \
         - exp(z*(H1 - H2)/2)*F23 ⊗ exp(-z*(H2 - H3)/2)*F12)",
    );
    assert_eq!(d, expected);
}

#[test]
fn counit_then_identity_recovers_generator() {
    let spec = load("su3");
    let maps = [shift_images(&counit_images(&spec, 1), spec.n_e(), 1, 0), identity_images(&spec, 1, 0)];
    for g in 0..spec.n_gens() {
        let x = spec.poisson_generator(g);
        let d = coproduct(&spec, &x).unwrap();
        assert_eq!(apply_morphism(&d, &maps, 1).unwrap(), x, "{}", spec.gen_name(g));
    }
}

#[test]
fn coproduct_is_a_bracket_morphism_on_su2() {
    for family in ["su2_standard", "su2_nonstandard"] {
        let spec = load(family);
        let n = spec.n_gens();
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (spec.poisson_generator(a), spec.poisson_generator(b));
                let lhs = coproduct(&spec, &p_bracket(&spec, &x, &y).unwrap()).unwrap();
                let rhs = tensor_bracket(
                    &spec,
                    &coproduct(&spec, &x).unwrap(),
                    &coproduct(&spec, &y).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs, "{} {} {}", family, spec.gen_name(a), spec.gen_name(b));
            }
        }
    }
}

#[test]
fn first_order_delta_examples() {
    let spec = load("su3");
    let f13 = spec.gen_index("F13").unwrap();
    let expected = el(&spec, "(1/2)*(H1 - H3) ∧ F13 + F12 ∧ F23");
    assert_eq!(first_order_delta(&spec, f13).unwrap(), expected);
    for h in ["H1", "H2", "H3"] {
        assert!(first_order_delta(&spec, spec.gen_index(h).unwrap()).unwrap().is_zero());
    }
    let ns = load("su2_nonstandard");
    assert!(first_order_delta(&ns, ns.gen_index("F12").unwrap()).unwrap().is_zero());
}

#[test]
fn z0_limit_examples() {
    let spec = load("su3");
    let v = br(&spec, "F12", "F21");
    assert_eq!(p_z0_limit(&v).unwrap(), el(&spec, "H1 - H2"));
    assert!(p_z0_limit(&el(&spec, "exp(z*(H1 - H2)/2)")).unwrap().is_one_like());
    assert!(p_z0_limit(&el(&spec, "z^2*F12^2*F23")).unwrap().is_zero());
    assert!(matches!(
        p_z0_limit(&el(&spec, "exp(z*H1)/z")),
        Err(Error::NegativeZValuation { .. })
    ));
}

impl PoissonElem {
    fn is_one_like(&self) -> bool {
        *self == PoissonElem::one(self.legs(), self.n_e(), self.n_ord())
    }
}

#[test]
fn sinh_squared_coefficient_product() {
    let spec = load("su2_standard");
    let s = el(&spec, "sinh(z*H)/z");
    let c = sinh_linear(vec![int(1)], int(0), int(0)).mul(&CoeffElem::z_pow(1, -1));
    assert_eq!(s.mul(&s).as_coeff().unwrap(), c.mul(&c));
}

const ATOMS_SU3: &[&str] = &[
    "H1", "H2", "H3", "F12", "F13", "F23", "F21", "F31", "F32",
    "exp(z*(H1 - H2)/2)", "sinh(z*(H2 - H3))/z", "hbar", "z",
];

fn random_su3() -> impl Strategy<Value = String> {
    let term = (
        -3i64..=3,
        1i64..=2,
        proptest::collection::vec(proptest::sample::select(ATOMS_SU3), 0..=2),
    )
        .prop_map(|(n, d, atoms)| {
            let mut s = format!("({}/{})", n, d);
            for a in atoms {
                s.push('*');
                s.push_str(a);
            }
            s
        });
    proptest::collection::vec(term, 1..=2).prop_map(|ts| ts.join(" + "))
}

fn su3() -> &'static AlgebraSpec {
    use std::sync::OnceLock;
    static SPEC: OnceLock<AlgebraSpec> = OnceLock::new();
    SPEC.get_or_init(|| load("su3"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn antisymmetry(x in random_su3(), y in random_su3()) {
        let spec = su3();
        let (x, y) = (el(spec, &x), el(spec, &y));
        let xy = p_bracket(spec, &x, &y).unwrap();
        let yx = p_bracket(spec, &y, &x).unwrap();
        prop_assert_eq!(xy, yx.neg());
    }

    #[test]
    fn leibniz(x in random_su3(), y in random_su3(), w in random_su3()) {
        let spec = su3();
        let (x, y, w) = (el(spec, &x), el(spec, &y), el(spec, &w));
        let lhs = p_bracket(spec, &x, &y.mul(&w)).unwrap();
        let rhs = p_bracket(spec, &x, &y).unwrap().mul(&w)
            .add(&y.mul(&p_bracket(spec, &x, &w).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi(x in random_su3(), y in random_su3(), w in random_su3()) {
        let spec = su3();
        let (x, y, w) = (el(spec, &x), el(spec, &y), el(spec, &w));
        let b = |a: &PoissonElem, c: &PoissonElem| p_bracket(spec, a, c).unwrap();
        let sum = b(&x, &b(&y, &w)).add(&b(&y, &b(&w, &x))).add(&b(&w, &b(&x, &y)));
        prop_assert!(sum.is_zero(), "{}", sum);
    }
}
