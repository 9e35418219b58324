//! Linear Lie bialgebra checks on structure constants: Jacobi for the Lie
//! bracket, Jacobi for the dual bracket defined by the cocommutator, and
//! the 1-cocycle condition tying the two together.

#[cfg(test)]
mod tests;

use num::Zero;
use serde::Serialize;

use crate::ring::push_signed_term as push_term;
use crate::ring::Rational;
use crate::spec::LieBialgebraData;

/// One failing subject with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearViolation {
    pub subject: Vec<String>,
    pub residual: String,
}

/// Outcome of one linear check over its full subject range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearReport {
    pub check: &'static str,
    pub subjects: usize,
    pub violations: Vec<LinearViolation>,
}

impl LinearReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

type Tensor3 = Vec<Vec<Vec<Rational>>>;

fn render_vector(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (i, q) in v.iter().enumerate() {
        if !q.is_zero() {
            let first = out.is_empty();
            push_term(&mut out, first, q, &[names[i].clone()]);
        }
    }
    out
}

fn render_matrix(m: &[Vec<Rational>], names: &[String]) -> String {
    let mut out = String::new();
    for (a, row) in m.iter().enumerate() {
        for (b, q) in row.iter().enumerate() {
            if !q.is_zero() {
                let f = format!("({} ⊗ {})", names[a], names[b]);
                let first = out.is_empty();
                push_term(&mut out, first, q, &[f]);
            }
        }
    }
    out
}

/// Jacobi for the bracket `[X_i, X_j] = t[i][j][k] X_k` over all triples
/// `i < j < k`.
fn jacobi(t: &Tensor3, names: &[String], check: &'static str) -> LinearReport {
    let n = names.len();
    // [X_a, [X_b, X_c]] as a vector
    let nested = |a: usize, b: usize, c: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for m in 0..n {
            let f = &t[b][c][m];
            if f.is_zero() {
                continue;
            }
            for (l, slot) in out.iter_mut().enumerate() {
                let g = &t[a][m][l];
                if !g.is_zero() {
                    *slot += f * g;
                }
            }
        }
        out
    };
    let mut violations = Vec::new();
    let mut subjects = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                subjects += 1;
                let mut sum = nested(i, j, k);
                for (s, x) in sum.iter_mut().zip(nested(j, k, i)) {
                    *s += x;
                }
                for (s, x) in sum.iter_mut().zip(nested(k, i, j)) {
                    *s += x;
                }
                if sum.iter().any(|q| !q.is_zero()) {
                    violations.push(LinearViolation {
                        subject: vec![names[i].clone(), names[j].clone(), names[k].clone()],
                        residual: render_vector(&sum, names),
                    });
                }
            }
        }
    }
    LinearReport {
        check,
        subjects,
        violations,
    }
}

/// Cyclic Jacobi sums of the Lie bracket.
pub fn lie_jacobi_check(d: &LieBialgebraData) -> LinearReport {
    jacobi(&d.f, &d.names, "lie-jacobi")
}

/// Jacobi for the dual bracket `[x^j, x^k] = c_i^{jk} x^i`.
pub fn cojacobi_check(d: &LieBialgebraData) -> LinearReport {
    let n = d.names.len();
    let mut t = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (i, ci) in d.c.iter().enumerate() {
        for (j, cij) in ci.iter().enumerate() {
            for (k, q) in cij.iter().enumerate() {
                t[j][k][i] = q.clone();
            }
        }
    }
    jacobi(&t, &d.names, "cojacobi")
}

/// `delta([X, Y]) = ad_X delta(Y) - ad_Y delta(X)` with the adjoint action
/// on both tensor legs, for every pair `x < y`.
pub fn cocycle_check(d: &LieBialgebraData) -> LinearReport {
    let n = d.names.len();
    let (f, c) = (&d.f, &d.c);
    // (ad_x ⊗ 1 + 1 ⊗ ad_x) delta(y), added into `out` with sign `s`
    let act = |x: usize, y: usize, s: &Rational, out: &mut Vec<Vec<Rational>>| {
        for p in 0..n {
            for q in 0..n {
                let cy = &c[y][p][q];
                if cy.is_zero() {
                    continue;
                }
                for a in 0..n {
                    let fa = &f[x][p][a];
                    if !fa.is_zero() {
                        out[a][q] += s * cy * fa;
                    }
                    let fb = &f[x][q][a];
                    if !fb.is_zero() {
                        out[p][a] += s * cy * fb;
                    }
                }
            }
        }
    };
    let one = Rational::from_integer(1.into());
    let mut violations = Vec::new();
    let mut subjects = 0;
    for x in 0..n {
        for y in x + 1..n {
            subjects += 1;
            let mut r = vec![vec![Rational::zero(); n]; n];
            for k in 0..n {
                let fk = &f[x][y][k];
                if fk.is_zero() {
                    continue;
                }
                for a in 0..n {
                    for b in 0..n {
                        r[a][b] += fk * &c[k][a][b];
                    }
                }
            }
            act(x, y, &-one.clone(), &mut r);
            act(y, x, &one, &mut r);
            if r.iter().flatten().any(|q| !q.is_zero()) {
                violations.push(LinearViolation {
                    subject: vec![d.names[x].clone(), d.names[y].clone()],
                    residual: render_matrix(&r, &d.names),
                });
            }
        }
    }
    LinearReport {
        check: "cocycle",
        subjects,
        violations,
    }
}
