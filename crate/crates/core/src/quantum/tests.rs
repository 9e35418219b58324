use std::collections::BTreeMap;

use num::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::ring::{cosh_linear, int, rat, sinh_linear, Rational};
use crate::spec::{catalog_load, catalog_source, Mode};

fn load(family: &str) -> AlgebraSpec {
    catalog_load(family, Mode::Quantum).unwrap()
}

fn el(spec: &AlgebraSpec, text: &str) -> QuantumElem {
    spec.parse_element(text).unwrap().as_quantum().unwrap().clone()
}

fn nf(spec: &AlgebraSpec, text: &str) -> QuantumElem {
    normal_order(spec, &el(spec, text), DEFAULT_FUEL).unwrap()
}

fn gen(spec: &AlgebraSpec, name: &str) -> QuantumElem {
    spec.quantum_generator(spec.gen_index(name).unwrap())
}

#[test]
fn su3_f21_f12() {
    let spec = load("su3");
    assert_eq!(nf(&spec, "F21*F12"), el(&spec, "F12*F21 - hbar*sinh(z*(H1 - H2))/z"));
}

#[test]
fn su3_f13_f12_two_step_rewrite() {
    let spec = load("su3");
    let got = nf(&spec, "F13*F12");
    // s = sinh(z hbar / 2), built directly in the ring
    let s = sinh_linear(vec![int(0); 3], rat(1, 2), int(0));
    let s2 = s.mul(&s);
    let f12 = gen(&spec, "F12");
    let (f13, f23) = (gen(&spec, "F13"), gen(&spec, "F23"));
    let one = CoeffElem::one(3);
    let expected = f12
        .mul(&f13)
        .mul_coeff(&one.add(&s2.scale(&int(4))))
        .sub(&f12.mul(&f12).mul(&f23).mul_coeff(&s2.scale(&int(4)).mul_hbar_pow(-1)));
    assert_eq!(got, expected);
}

#[test]
fn normal_words_are_fixed() {
    let spec = load("su3");
    let x = el(&spec, "F12*F13*F23*F32*F31*F21");
    assert!(x.is_normal());
    assert_eq!(normal_order(&spec, &x, DEFAULT_FUEL).unwrap(), x);
}

#[test]
fn nonstandard_h_past_sinh() {
    let spec = load("su2_nonstandard");
    let got = nf(&spec, "H*sinh(z*F12)");
    let expected = el(&spec, "sinh(z*F12)*H + hbar*sinh(z*F12)*cosh(z*F12)");
    assert_eq!(got, expected);
    let s = sinh_linear(vec![int(1)], int(0), int(0));
    let c = cosh_linear(vec![int(1)], int(0), int(0));
    let tail = got.sub(&el(&spec, "sinh(z*F12)*H"));
    assert_eq!(tail.as_coeff().unwrap(), s.mul(&c).mul_hbar_pow(1));
}

#[test]
fn shift_rule_moves_exponentials() {
    let spec = load("su2_standard");
    // F12 exp(zH) = exp(z(H - hbar)) F12 since [H, F12] = hbar F12
    assert_eq!(nf(&spec, "F12*exp(z*H)"), el(&spec, "exp(z*(H - hbar))*F12"));
}

#[test]
fn catalog_commutators() {
    let spec = load("su3");
    let c = q_commutator(&spec, &gen(&spec, "F12"), &gen(&spec, "F32"), DEFAULT_FUEL).unwrap();
    assert!(c.is_zero());
    let c = q_commutator(&spec, &gen(&spec, "H1"), &gen(&spec, "H2"), DEFAULT_FUEL).unwrap();
    assert!(c.is_zero());
}

#[test]
fn anticommutator_doubles_in_the_limit() {
    let q = load("su3");
    let p = catalog_load("su3", Mode::Poisson).unwrap();
    let a = q_anticommutator(&q, &gen(&q, "F23"), &gen(&q, "F32"), DEFAULT_FUEL).unwrap();
    let lim = hbar_limit(&q, &p, &a, DEFAULT_FUEL).unwrap();
    let pe = p.parse_element("2*F23*F32").unwrap();
    assert_eq!(&lim, pe.as_poisson().unwrap());
}

#[test]
fn hbar_limit_bracket_examples() {
    let q = load("su3");
    let p = catalog_load("su3", Mode::Poisson).unwrap();
    let got = hbar_limit_bracket(&q, &p, &gen(&q, "F13"), &gen(&q, "F31"), DEFAULT_FUEL).unwrap();
    let f13 = p.gen_index("F13").unwrap();
    let f31 = p.gen_index("F31").unwrap();
    assert_eq!(got, p.poisson_bracket_value(f13, f31).unwrap());

    let q = load("su2_nonstandard");
    let p = catalog_load("su2_nonstandard", Mode::Poisson).unwrap();
    let got = hbar_limit_bracket(&q, &p, &gen(&q, "H"), &gen(&q, "F21"), DEFAULT_FUEL).unwrap();
    let pe = p.parse_element("-cosh(z*F12)*F21").unwrap();
    assert_eq!(&got, pe.as_poisson().unwrap());
}

#[test]
fn limit_after_reabsorption_does_not_exist() {
    let q = load("su2_standard").at_hbar_one();
    let p = catalog_load("su2_standard", Mode::Poisson).unwrap();
    let r = hbar_limit_bracket(&q, &p, &gen(&q, "F12"), &gen(&q, "F21"), DEFAULT_FUEL);
    assert!(matches!(r, Err(Error::NegativeHbarValuation { .. })), "{:?}", r);
}

#[test]
fn hbar_limit_coproduct_examples() {
    let q = load("su3");
    let p = catalog_load("su3", Mode::Poisson).unwrap();
    for name in ["F13", "H1"] {
        let g = q.gen_index(name).unwrap();
        let got = hbar_limit_coproduct(&q, &p, g, DEFAULT_FUEL).unwrap();
        assert_eq!(&got, p.coproduct[&g].as_poisson().unwrap(), "{}", name);
    }
    let q = load("su2_standard");
    let p = catalog_load("su2_standard", Mode::Poisson).unwrap();
    let g = q.gen_index("F12").unwrap();
    let got = hbar_limit_coproduct(&q, &p, g, DEFAULT_FUEL).unwrap();
    assert_eq!(&got, p.coproduct[&g].as_poisson().unwrap());
}

#[test]
fn rescale_examples() {
    let spec = load("su2_standard");
    assert_eq!(rescale_map(&el(&spec, "H^2")).unwrap(), el(&spec, "hbar^2*H^2"));
    assert_eq!(
        rescale_map(&el(&spec, "sinh(z*hbar/2)")).unwrap(),
        el(&spec, "sinh(z/2)")
    );
    assert_eq!(rescale_map(&el(&spec, "F12*F21")).unwrap(), el(&spec, "hbar^2*F12*F21"));
    let rhs = rescale_map(&el(&spec, "hbar*sinh(2*z*H)/z")).unwrap();
    assert_eq!(rhs, el(&spec, "hbar^2*sinh(2*z*H)/z"));
}

#[test]
fn fuel_exhaustion_reports_the_term() {
    let spec = load("su3");
    let x = el(&spec, "F21*F31*F12*F13");
    match normal_order(&spec, &x, 3) {
        Err(Error::FuelExhausted { applied, term }) => {
            assert_eq!(applied, 3);
            assert!(!term.is_empty());
        }
        other => panic!("{:?}", other),
    }
}

#[test]
fn poisson_spec_is_rejected() {
    let spec = catalog_load("su3", Mode::Poisson).unwrap();
    assert!(matches!(Rewriter::new(&spec), Err(Error::WrongMode { .. })));
}

#[test]
fn coproduct_of_cartan_is_primitive() {
    let spec = load("su3");
    let d = coproduct(&spec, &gen(&spec, "H2"), DEFAULT_FUEL).unwrap();
    assert_eq!(d, el(&spec, "H2 ⊗ 1 + 1 ⊗ H2"));
}

// Truncated-series oracle for the non-standard reorder rules. Words over
// the letters H, F12, F21 with coefficients in functions of F12; only the
// pairwise relations
//   H F12 = F12 H + hbar g,   F21 F12 = F12 F21 - 2 hbar H,   g = sinh(z F12)/z
// are used. Rewriting always happens at the leftmost non-F12 letter, so the
// prefix is a power of F12 and commutes with every function of F12.

const OH: u8 = 0;
const OF12: u8 = 1;
const OF21: u8 = 2;

fn oracle_normalize(start: BTreeMap<Vec<u8>, CoeffElem>) -> BTreeMap<Vec<u8>, CoeffElem> {
    let g = sinh_linear(vec![int(1)], int(0), int(0)).mul(&CoeffElem::z_pow(1, -1));
    let f12 = CoeffElem::var(1, 0);
    let mut pending = start;
    let mut done: BTreeMap<Vec<u8>, CoeffElem> = BTreeMap::new();
    let push = |m: &mut BTreeMap<Vec<u8>, CoeffElem>, w: Vec<u8>, c: CoeffElem| {
        let slot = m.entry(w.clone()).or_insert_with(|| CoeffElem::zero(1));
        slot.add_assign(&c);
        if slot.is_zero() {
            m.remove(&w);
        }
    };
    while let Some((mut w, mut c)) = pending.pop_first() {
        // absorb the leading F12 letters
        while w.first() == Some(&OF12) {
            w.remove(0);
            c = c.mul(&f12);
        }
        let Some(p) = w.windows(2).position(|p| p[0] != OF12 && p[1] == OF12) else {
            push(&mut done, w, c);
            continue;
        };
        assert_eq!(p, 0, "oracle only handles one non-F12 letter");
        let (x, mut swapped) = (w[p], w.clone());
        swapped.swap(p, p + 1);
        push(&mut pending, swapped, c.clone());
        let tail = w[2..].to_vec();
        match x {
            OH => push(&mut pending, tail, c.mul(&g).mul_hbar_pow(1)),
            OF21 => {
                let mut nw = vec![OH];
                nw.extend(tail);
                push(&mut pending, nw, c.scale(&int(-2)).mul_hbar_pow(1));
            }
            _ => unreachable!(),
        }
    }
    done
}

fn oracle_vs_engine(letter: u8, poly: &[Rational]) {
    let spec = load("su2_nonstandard");
    let mut start = BTreeMap::new();
    for (n, a) in poly.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut w = vec![letter];
        w.extend(std::iter::repeat(OF12).take(n));
        start.insert(w, CoeffElem::scalar(1, a.clone()));
    }
    let oracle = oracle_normalize(start);
    let name = |l: u8| match l {
        OH => "H",
        OF21 => "F21",
        _ => unreachable!(),
    };
    let mut expected = QuantumElem::zero(1, 1);
    for (w, c) in &oracle {
        let mut term = QuantumElem::from_coeff(1, 1, c.clone());
        for &l in w {
            term = term.mul(&gen(&spec, name(l)));
        }
        expected.add_assign(&term);
    }
    let mut f = CoeffElem::zero(1);
    for (n, a) in poly.iter().enumerate() {
        f.add_assign(&CoeffElem::var(1, 0).pow(n as u32).scale(a));
    }
    let x = gen(&spec, name(letter)).mul(&QuantumElem::from_coeff(1, 1, f));
    let got = normal_order(&spec, &x, DEFAULT_FUEL).unwrap();
    assert_eq!(got, expected, "letter {} poly {:?}", name(letter), poly);
}

#[test]
fn nonstandard_rules_match_oracle_on_monomials() {
    for n in 0..=8 {
        let mut poly = vec![Rational::zero(); n + 1];
        poly[n] = Rational::one();
        oracle_vs_engine(OH, &poly);
        oracle_vs_engine(OF21, &poly);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn nonstandard_rules_match_oracle_on_polynomials(
        coeffs in proptest::collection::vec(-5i64..=5, 1..=9),
        letter in prop_oneof![Just(OH), Just(OF21)],
    ) {
        let poly: Vec<Rational> = coeffs.into_iter().map(int).collect();
        oracle_vs_engine(letter, &poly);
    }
}

#[test]
fn oracle_reproduces_the_rules_in_closed_form() {
    // F21 F12^2 = F12^2 F21 - 4 hbar F12 H - 2 hbar^2 g
    let mut start = BTreeMap::new();
    start.insert(vec![OF21, OF12, OF12], CoeffElem::one(1));
    let got = oracle_normalize(start);
    let g = sinh_linear(vec![int(1)], int(0), int(0)).mul(&CoeffElem::z_pow(1, -1));
    let f = CoeffElem::var(1, 0);
    let mut expected = BTreeMap::new();
    expected.insert(vec![OF21], f.mul(&f));
    expected.insert(vec![OH], f.scale(&int(-4)).mul_hbar_pow(1));
    expected.insert(vec![], g.scale(&int(-2)).mul_hbar_pow(2));
    assert_eq!(got, expected);
}

const SU3_GENS: &[&str] = &["H1", "H2", "H3", "F12", "F13", "F23", "F21", "F31", "F32"];
const NS_ATOMS: &[&str] = &["H", "F21", "F12", "exp(z*F12)", "sinh(z*F12)/z"];

fn word_of(atoms: &'static [&'static str], max: usize) -> impl Strategy<Value = String> {
    (
        -3i64..=3,
        proptest::collection::vec(proptest::sample::select(atoms), 0..=max),
    )
        .prop_map(|(n, w)| {
            let mut s = format!("({})", n);
            for a in w {
                s.push('*');
                s.push_str(a);
            }
            s
        })
}

fn spec_cache(family: &'static str) -> &'static AlgebraSpec {
    use std::sync::OnceLock;
    static SU3: OnceLock<AlgebraSpec> = OnceLock::new();
    static SU3_FIXED: OnceLock<AlgebraSpec> = OnceLock::new();
    static NS: OnceLock<AlgebraSpec> = OnceLock::new();
    match family {
        "su3" => SU3.get_or_init(|| load("su3")),
        "su3_fixed" => SU3_FIXED.get_or_init(su3_consistent),
        _ => NS.get_or_init(|| load("su2_nonstandard")),
    }
}

const F13_F31_CATALOG: &str = "[F13, F31] = hbar*sinh(z*(H1 - H3))/z";
const F13_F31_CONSISTENT: &str = "[F13, F31] = sinh(z*hbar)*sinh(z*(H1 - H3))/z^2";

/// The su3 catalog entry with the leading term of `[F13, F31]` replaced by
/// the one the remaining relations force.
fn su3_consistent() -> AlgebraSpec {
    let src = catalog_source("su3", Mode::Quantum).unwrap();
    assert!(src.contains(F13_F31_CATALOG));
    AlgebraSpec::parse(&src.replace(F13_F31_CATALOG, F13_F31_CONSISTENT)).unwrap()
}

#[test]
fn catalog_su3_normal_form_depends_on_bracketing() {
    let spec = load("su3");
    let (x, y) = (el(&spec, "F31"), el(&spec, "F13*F12"));
    let direct = normal_order(&spec, &x.mul(&y), DEFAULT_FUEL).unwrap();
    let ny = normal_order(&spec, &y, DEFAULT_FUEL).unwrap();
    let staged = normal_order(&spec, &x.mul(&ny), DEFAULT_FUEL).unwrap();
    assert_ne!(direct, staged);
    let fixed = su3_consistent();
    let direct = normal_order(&fixed, &x.mul(&y), DEFAULT_FUEL).unwrap();
    let ny = normal_order(&fixed, &y, DEFAULT_FUEL).unwrap();
    assert_eq!(direct, normal_order(&fixed, &x.mul(&ny), DEFAULT_FUEL).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nf_is_idempotent(w in word_of(SU3_GENS, 4)) {
        let spec = spec_cache("su3");
        let once = nf(spec, &w);
        prop_assert!(once.is_normal());
        prop_assert_eq!(normal_order(spec, &once, DEFAULT_FUEL).unwrap(), once);
    }

    #[test]
    fn nf_respects_multiplication(x in word_of(SU3_GENS, 2), y in word_of(SU3_GENS, 2)) {
        let spec = spec_cache("su3_fixed");
        let (x, y) = (el(spec, &x), el(spec, &y));
        let direct = normal_order(spec, &x.mul(&y), DEFAULT_FUEL).unwrap();
        let nx = normal_order(spec, &x, DEFAULT_FUEL).unwrap();
        let ny = normal_order(spec, &y, DEFAULT_FUEL).unwrap();
        prop_assert_eq!(direct, normal_order(spec, &nx.mul(&ny), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn nonstandard_nf_respects_multiplication(x in word_of(NS_ATOMS, 2), y in word_of(NS_ATOMS, 2)) {
        let spec = spec_cache("su2_nonstandard");
        let (x, y) = (el(spec, &x), el(spec, &y));
        let direct = normal_order(spec, &x.mul(&y), DEFAULT_FUEL).unwrap();
        let nx = normal_order(spec, &x, DEFAULT_FUEL).unwrap();
        let ny = normal_order(spec, &y, DEFAULT_FUEL).unwrap();
        prop_assert_eq!(direct, normal_order(spec, &nx.mul(&ny), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn confluence_probe_agrees_on_su2(w in word_of(NS_ATOMS, 4), seed in any::<u64>()) {
        let spec = spec_cache("su2_nonstandard");
        let probe = confluence_probe(spec, &el(spec, &w), DEFAULT_FUEL, seed).unwrap();
        prop_assert!(probe.agrees());
    }

    #[test]
    fn confluence_probe_agrees_on_consistent_su3(w in word_of(SU3_GENS, 4), seed in any::<u64>()) {
        let spec = spec_cache("su3_fixed");
        let probe = confluence_probe(spec, &el(spec, &w), DEFAULT_FUEL, seed).unwrap();
        prop_assert!(probe.agrees());
    }
}

#[test]
fn confluence_probe_flags_the_f13_f31_overlap() {
    let spec = load("su3");
    let x = el(&spec, "F31*F13*F12");
    let disagree = (0..16u64)
        .map(|seed| confluence_probe(&spec, &x, DEFAULT_FUEL, seed).unwrap())
        .any(|p| !p.agrees());
    assert!(disagree);
    // words inside one root su(2) resolve uniquely
    let y = el(&spec, "F21*F21*F12*F12*H3");
    for seed in 0..16u64 {
        assert!(confluence_probe(&spec, &y, DEFAULT_FUEL, seed).unwrap().agrees());
    }
}
