use std::collections::BTreeSet;

use num::Zero;
use proptest::prelude::*;

use super::*;
use crate::ring::int;
use crate::spec::{catalog_families, catalog_load, Mode};

fn data(family: &str) -> LieBialgebraData {
    catalog_load(family, Mode::Poisson).unwrap().lie_bialgebra_data().unwrap()
}

type Vector = Vec<Rational>;

fn basis(n: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[i] = int(1);
    v
}

fn bracket(t: &Tensor3, u: &Vector, v: &Vector) -> Vector {
    let n = u.len();
    let mut out = vec![Rational::zero(); n];
    for i in (0..n).filter(|&i| !u[i].is_zero()) {
        for j in (0..n).filter(|&j| !v[j].is_zero()) {
            let w = &u[i] * &v[j];
            for k in 0..n {
                out[k] += &w * &t[i][j][k];
            }
        }
    }
    out
}

fn add(u: &Vector, v: &Vector) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

// Jacobi evaluated through the bilinear map on every ordered triple.
fn jacobi_oracle(t: &Tensor3) -> BTreeSet<[usize; 3]> {
    let n = t.len();
    let mut bad = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (basis(n, i), basis(n, j), basis(n, k));
                let s = add(
                    &add(&bracket(t, &x, &bracket(t, &y, &z)), &bracket(t, &y, &bracket(t, &z, &x))),
                    &bracket(t, &z, &bracket(t, &x, &y)),
                );
                if s.iter().any(|q| !q.is_zero()) {
                    let mut key = [i, j, k];
                    key.sort();
                    bad.insert(key);
                }
            }
        }
    }
    bad
}

fn failing_triples(r: &LinearReport, names: &[String]) -> BTreeSet<[usize; 3]> {
    r.violations
        .iter()
        .map(|v| {
            let idx: Vec<usize> = v.subject.iter().map(|s| names.iter().position(|n| n == s).unwrap()).collect();
            [idx[0], idx[1], idx[2]]
        })
        .collect()
}

fn dual(d: &LieBialgebraData) -> Tensor3 {
    let n = d.names.len();
    let mut t = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t[j][k][i] = d.c[i][j][k].clone();
            }
        }
    }
    t
}

type Matrix = Vec<Vec<Rational>>;

fn delta(d: &LieBialgebraData, u: &Vector) -> Matrix {
    let n = u.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                m[a][b] += &u[i] * &d.c[i][a][b];
            }
        }
    }
    m
}

// (ad_x ⊗ 1 + 1 ⊗ ad_x) applied to a matrix, one elementary tensor at a time.
fn ad2(d: &LieBialgebraData, x: &Vector, m: &Matrix) -> Matrix {
    let n = x.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            if m[a][b].is_zero() {
                continue;
            }
            let left = bracket(&d.f, x, &basis(n, a));
            let right = bracket(&d.f, x, &basis(n, b));
            for p in 0..n {
                out[p][b] += &m[a][b] * &left[p];
                out[a][p] += &m[a][b] * &right[p];
            }
        }
    }
    out
}

fn cocycle_oracle(d: &LieBialgebraData) -> BTreeSet<[usize; 2]> {
    let n = d.names.len();
    let mut bad = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (basis(n, i), basis(n, j));
            let lhs = delta(d, &bracket(&d.f, &x, &y));
            let a = ad2(d, &x, &delta(d, &y));
            let b = ad2(d, &y, &delta(d, &x));
            let nonzero = (0..n).any(|p| (0..n).any(|q| !(&lhs[p][q] - &a[p][q] + &b[p][q]).is_zero()));
            if nonzero {
                bad.insert([i.min(j), i.max(j)]);
            }
        }
    }
    bad
}

fn failing_pairs(r: &LinearReport, names: &[String]) -> BTreeSet<[usize; 2]> {
    r.violations
        .iter()
        .map(|v| {
            let p = |s: &String| names.iter().position(|n| n == s).unwrap();
            [p(&v.subject[0]), p(&v.subject[1])]
        })
        .collect()
}

#[test]
fn catalog_bialgebras_pass() {
    for family in catalog_families() {
        let d = data(family);
        for r in [lie_jacobi_check(&d), cojacobi_check(&d), cocycle_check(&d)] {
            assert!(r.passed(), "{} {}: {:?}", family, r.check, r.violations);
        }
    }
}

#[test]
fn subject_counts() {
    let d = data("su3");
    assert_eq!(lie_jacobi_check(&d).subjects, 84);
    assert_eq!(cocycle_check(&d).subjects, 36);
    let d = data("su2_standard");
    assert_eq!(lie_jacobi_check(&d).subjects, 1);
    assert_eq!(cocycle_check(&d).subjects, 3);
}

#[test]
fn flipped_su2_constant_fails_on_the_named_triple() {
    let mut d = data("su2_standard");
    let h = d.names.iter().position(|n| n == "H").unwrap();
    let e = d.names.iter().position(|n| n == "F12").unwrap();
    d.f[h][e][e] = int(2);
    d.f[e][h][e] = int(-2);
    let r = lie_jacobi_check(&d);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].subject, vec!["H", "F12", "F21"]);
    assert_eq!(failing_triples(&r, &d.names), jacobi_oracle(&d.f));
}

#[test]
fn zero_cobracket_is_a_dual_lie_algebra() {
    let mut d = data("su3");
    for v in d.c.iter_mut().flatten().flatten() {
        *v = Rational::zero();
    }
    assert!(cojacobi_check(&d).passed());
    assert!(cocycle_check(&d).passed());
}

#[test]
fn dropping_a_term_breaks_the_cocycle() {
    let mut d = data("su3");
    let idx = |s: &str| d.names.iter().position(|n| n == s).unwrap();
    let (f13, f12, f23) = (idx("F13"), idx("F12"), idx("F23"));
    assert_eq!(d.c[f13][f12][f23], int(1));
    d.c[f13][f12][f23] = Rational::zero();
    d.c[f13][f23][f12] = Rational::zero();
    let r = cocycle_check(&d);
    assert!(!r.passed());
    assert_eq!(failing_pairs(&r, &d.names), cocycle_oracle(&d));
}

#[test]
fn residuals_are_rendered() {
    let mut d = data("su2_standard");
    let h = d.names.iter().position(|n| n == "H").unwrap();
    let e = d.names.iter().position(|n| n == "F12").unwrap();
    d.f[h][e][e] = int(2);
    d.f[e][h][e] = int(-2);
    // [H,[F12,F21]] + [F12,[F21,H]] + [F21,[H,F12]] = 0 + 2H - 4H
    assert_eq!(lie_jacobi_check(&d).violations[0].residual, "-2*H");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn checks_agree_with_oracles_under_perturbation(
        i in 0usize..9, j in 0usize..9, k in 0usize..9, r in -2i64..=2,
        family in prop_oneof![Just("su3"), Just("su2_standard"), Just("su2_nonstandard")],
    ) {
        let mut d = data(family);
        let n = d.names.len();
        let (i, j, k) = (i % n, j % n, k % n);
        if j != k {
            d.c[i][j][k] += int(r);
            d.c[i][k][j] -= int(r);
        }
        if i != j {
            d.f[i][j][k] += int(r);
            d.f[j][i][k] -= int(r);
        }
        prop_assert_eq!(failing_triples(&lie_jacobi_check(&d), &d.names), jacobi_oracle(&d.f));
        prop_assert_eq!(failing_triples(&cojacobi_check(&d), &d.names), jacobi_oracle(&dual(&d)));
        prop_assert_eq!(failing_pairs(&cocycle_check(&d), &d.names), cocycle_oracle(&d));
    }
}
