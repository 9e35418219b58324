use num::{One, Signed, Zero};

use super::{CoeffElem, Rational, RingKey};

/// Renders a rational as a standalone factor: integers bare, fractions
/// parenthesised so the output parses back unambiguously.
pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else if q.is_negative() {
        format!("(-{})", -q)
    } else {
        format!("({})", q)
    }
}

pub(crate) fn power(base: &str, e: i32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{}^{}", base, e)
    }
}

/// Appends one signed term `q * factors` to a sum under construction.
pub(crate) fn push_term(out: &mut String, first: bool, q: &Rational, factors: &[String]) {
    let negative = q.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let mag = q.abs();
    if factors.is_empty() {
        out.push_str(&mag.to_string());
        return;
    }
    if !mag.is_one() {
        out.push_str(&render_rational(&mag));
        out.push('*');
    }
    out.push_str(&factors.join("*"));
}

/// Renders `a.E + c*hbar + d`.
pub fn render_linear(a: &[Rational], names: &[&str], c: &Rational, d: &Rational) -> String {
    let mut out = String::new();
    let mut first = true;
    for (q, name) in a.iter().zip(names) {
        if !q.is_zero() {
            push_term(&mut out, first, q, &[name.to_string()]);
            first = false;
        }
    }
    if !c.is_zero() {
        push_term(&mut out, first, c, &["hbar".to_string()]);
        first = false;
    }
    if !d.is_zero() {
        push_term(&mut out, first, d, &[]);
        first = false;
    }
    if first {
        out.push('0');
    }
    out
}

/// The multiplicative factors of a key (without its rational coefficient).
pub(crate) fn key_factors(k: &RingKey, names: &[&str]) -> Vec<String> {
    let mut factors = Vec::new();
    if k.zpow != 0 {
        factors.push(power("z", k.zpow));
    }
    if k.hpow != 0 {
        factors.push(power("hbar", k.hpow));
    }
    factors.extend(key_leg_factors(k, names, 0));
    factors.extend(scalar_exp_factor(k));
    factors
}

fn scalar_exp_factor(k: &RingKey) -> Option<String> {
    if !k.hbar_expweight.is_zero() || !k.const_expweight.is_zero() {
        let lin = render_linear(&[], &[], &k.hbar_expweight, &k.const_expweight);
        Some(exp_factor(&lin, false))
    } else {
        None
    }
}

/// The E-free factors of a key: z and hbar powers and the scalar exponential.
pub(crate) fn scalar_factors(k: &RingKey) -> Vec<String> {
    let mut factors = Vec::new();
    if k.zpow != 0 {
        factors.push(power("z", k.zpow));
    }
    if k.hpow != 0 {
        factors.push(power("hbar", k.hpow));
    }
    factors.extend(scalar_exp_factor(k));
    factors
}

/// Polynomial and exponential factors of the variables `offset..offset+names.len()`.
pub(crate) fn key_leg_factors(k: &RingKey, names: &[&str], offset: usize) -> Vec<String> {
    let mut factors = Vec::new();
    let n = names.len();
    for (j, name) in names.iter().enumerate() {
        let d = k.polydeg[offset + j];
        if d > 0 {
            factors.push(power(name, d as i32));
        }
    }
    let a = &k.expweight[offset..offset + n];
    if a.iter().any(|x| !x.is_zero()) {
        let nonzero: Vec<usize> = (0..n).filter(|&j| !a[j].is_zero()).collect();
        let simple = nonzero.len() == 1 && a[nonzero[0]].is_one();
        let lin = render_linear(a, names, &Rational::zero(), &Rational::zero());
        factors.push(exp_factor(&lin, simple));
    }
    factors
}

fn exp_factor(lin: &str, simple: bool) -> String {
    if simple {
        format!("exp(z*{})", lin)
    } else {
        format!("exp(z*({}))", lin)
    }
}

pub(crate) fn render_coeff(x: &CoeffElem, names: &[&str]) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, q)) in x.terms().enumerate() {
        push_term(&mut out, i == 0, q, &key_factors(k, names));
    }
    out
}
