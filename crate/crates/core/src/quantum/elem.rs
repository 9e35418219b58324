use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::ring::{CoeffElem, Rational, RingKey};
use crate::spec::Layout;

/// One letter of a word: an ordinary generator, or a pure function of the
/// exponential-capable generators that has not yet been moved to the left.
///
/// `Fn` keys carry no scalar factor (no z, hbar or scalar exponential) and
/// are never the unit; scalars always live in the term coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gen(u16),
    Fn(RingKey),
}

pub type Word = Vec<Letter>;

/// Element of `U_{z,hbar}(g)` or of its `legs`-fold tensor power.
///
/// Each term is a coefficient (leftmost, over the E variables of all legs)
/// times one word per leg. Words are kept in a light canonical form: no
/// leading `Fn` letter, no two adjacent `Fn` letters. The element is
/// canonical as an algebra element only after normal ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumElem {
    legs: usize,
    n_e: usize,
    terms: BTreeMap<Vec<Word>, CoeffElem>,
}

/// Tensors are quantum elements with more than one leg.
pub type QTensorElem = QuantumElem;

impl QuantumElem {
    pub fn zero(legs: usize, n_e: usize) -> Self {
        QuantumElem {
            legs,
            n_e,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.legs, self.n_e)
    }

    pub fn from_coeff(legs: usize, n_e: usize, c: CoeffElem) -> Self {
        assert_eq!(c.rank(), legs * n_e);
        let mut out = Self::zero(legs, n_e);
        out.push_canonical(vec![Vec::new(); legs], c);
        out
    }

    pub fn one(legs: usize, n_e: usize) -> Self {
        Self::from_coeff(legs, n_e, CoeffElem::one(legs * n_e))
    }

    pub fn scalar(legs: usize, n_e: usize, q: Rational) -> Self {
        Self::from_coeff(legs, n_e, CoeffElem::scalar(legs * n_e, q))
    }

    /// Ordinary generator `idx` in leg `leg`.
    pub fn generator(legs: usize, n_e: usize, leg: usize, idx: usize) -> Self {
        let mut words = vec![Vec::new(); legs];
        words[leg].push(Letter::Gen(idx as u16));
        let mut out = Self::zero(legs, n_e);
        out.push_canonical(words, CoeffElem::one(legs * n_e));
        out
    }

    /// Exponential-capable generator `idx` in leg `leg`.
    pub fn exp_var(legs: usize, n_e: usize, leg: usize, idx: usize) -> Self {
        Self::from_coeff(legs, n_e, CoeffElem::var(legs * n_e, leg * n_e + idx))
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn n_e(&self) -> usize {
        self.n_e
    }

    pub fn rank(&self) -> usize {
        self.legs * self.n_e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &CoeffElem)> {
        self.terms.iter()
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Vec<Word>, CoeffElem> {
        self.terms
    }

    pub(crate) fn from_map(legs: usize, n_e: usize, terms: BTreeMap<Vec<Word>, CoeffElem>) -> Self {
        QuantumElem { legs, n_e, terms }
    }

    /// The coefficient when no term carries a letter.
    pub fn as_coeff(&self) -> Option<CoeffElem> {
        let mut out = CoeffElem::zero(self.rank());
        for (w, c) in &self.terms {
            if w.iter().any(|leg| !leg.is_empty()) {
                return None;
            }
            out.add_assign(c);
        }
        Some(out)
    }

    /// True when every word consists of generators in nondecreasing order.
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|words| {
            words.iter().all(|w| {
                w.windows(2).all(|p| match (&p[0], &p[1]) {
                    (Letter::Gen(a), Letter::Gen(b)) => a <= b,
                    _ => false,
                }) && w.iter().all(|l| matches!(l, Letter::Gen(_)))
            })
        })
    }

    /// Adds `c * words`, first restoring the light canonical form.
    pub(crate) fn push_canonical(&mut self, mut words: Vec<Word>, mut c: CoeffElem) {
        if c.is_zero() {
            return;
        }
        let rank = self.rank();
        for (leg, w) in words.iter_mut().enumerate() {
            if let Some(k) = canonicalize_word(w) {
                c = c.mul_key(&k.embed(rank, leg * self.n_e), &Rational::one());
            }
        }
        add_term(&mut self.terms, words, c);
    }

    fn check_legs(&self, other: &QuantumElem) -> Result<()> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch {
                left: self.legs,
                right: other.legs,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &QuantumElem) -> Result<QuantumElem> {
        self.check_legs(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &QuantumElem) -> QuantumElem {
        self.try_add(other).expect("adding elements with different leg counts")
    }

    pub fn add_assign(&mut self, other: &QuantumElem) {
        assert_eq!(self.legs, other.legs, "adding elements with different leg counts");
        for (w, c) in &other.terms {
            add_term(&mut self.terms, w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &QuantumElem) -> QuantumElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuantumElem {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, q: &Rational) -> QuantumElem {
        self.map_coeffs(|c| c.scale(q))
    }

    /// Left multiplication by a coefficient.
    pub fn mul_coeff(&self, k: &CoeffElem) -> QuantumElem {
        self.map_coeffs(|c| k.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffElem) -> CoeffElem) -> QuantumElem {
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            add_term(&mut out.terms, w.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs(
        &self,
        f: impl Fn(&CoeffElem) -> Result<CoeffElem>,
    ) -> Result<QuantumElem> {
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            add_term(&mut out.terms, w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Maps each coefficient with access to its words.
    pub fn try_map_terms(
        &self,
        f: impl Fn(&[Word], &CoeffElem) -> Result<CoeffElem>,
    ) -> Result<QuantumElem> {
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            add_term(&mut out.terms, w.clone(), f(w, c)?);
        }
        Ok(out)
    }

    /// Raw product: words are concatenated per leg, and the right factor's
    /// E-dependent coefficient stays in place as `Fn` letters.
    pub fn try_mul(&self, other: &QuantumElem) -> Result<QuantumElem> {
        self.check_legs(other)?;
        let rank = self.rank();
        let mut out = self.zero_like();
        for (w2, c2) in &other.terms {
            for (k2, q2) in c2.terms() {
                // Per-leg E parts become letters; the scalar part commutes.
                let mut mids: Vec<Option<RingKey>> = Vec::with_capacity(self.legs);
                let mut scalar = k2.clone();
                for leg in 0..self.legs {
                    let (part, rest) = scalar.split_range(leg * self.n_e..(leg + 1) * self.n_e);
                    mids.push(if part.is_unit() { None } else { Some(part) });
                    scalar = rest;
                }
                debug_assert_eq!(scalar.rank(), rank);
                for (w1, c1) in &self.terms {
                    let words: Vec<Word> = (0..self.legs)
                        .map(|leg| {
                            let mut w = w1[leg].clone();
                            if let Some(m) = &mids[leg] {
                                w.push(Letter::Fn(m.clone()));
                            }
                            w.extend(w2[leg].iter().cloned());
                            w
                        })
                        .collect();
                    out.push_canonical(words, c1.mul_key(&scalar, q2));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &QuantumElem) -> QuantumElem {
        self.try_mul(other).expect("multiplying elements with different leg counts")
    }

    pub fn pow(&self, n: u32) -> QuantumElem {
        let mut acc = QuantumElem::one(self.legs, self.n_e);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self ⊗ other`, with legs concatenated.
    pub fn tensor(&self, other: &QuantumElem) -> QuantumElem {
        let legs = self.legs + other.legs;
        let rank = legs * self.n_e;
        let mut out = QuantumElem::zero(legs, self.n_e);
        for (w1, c1) in &self.terms {
            let c1 = c1.embed(rank, 0);
            for (w2, c2) in &other.terms {
                let mut words = w1.clone();
                words.extend(w2.iter().cloned());
                let c2 = c2.embed(rank, self.rank());
                add_term(&mut out.terms, words, c1.mul(&c2));
            }
        }
        out
    }

    /// Places this element's legs at `leg..leg + self.legs()` of a
    /// `legs`-fold tensor power.
    pub fn embed_leg(&self, legs: usize, leg: usize) -> QuantumElem {
        assert!(leg + self.legs <= legs);
        let mut out = QuantumElem::zero(legs, self.n_e);
        for (w, c) in &self.terms {
            let mut words = vec![Vec::new(); legs];
            for (j, word) in w.iter().enumerate() {
                words[leg + j] = word.clone();
            }
            add_term(&mut out.terms, words, c.embed(legs * self.n_e, leg * self.n_e));
        }
        out
    }

    /// Canonical text in the definition language.
    pub fn render(&self, layout: &Layout) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let e_names: Vec<&str> = layout.e_names.iter().map(String::as_str).collect();
        let mut out = String::new();
        let mut first = true;
        for (words, c) in &self.terms {
            for (k, q) in c.terms() {
                let mut factors = crate::ring::render_scalar_factors(k);
                let mut legs = Vec::new();
                for (leg, w) in words.iter().enumerate() {
                    let mut lf = crate::ring::render_leg_factors(k, &e_names, leg * self.n_e);
                    for letter in w {
                        match letter {
                            Letter::Gen(g) => lf.push(layout.ord_names[*g as usize].clone()),
                            Letter::Fn(fk) => {
                                lf.extend(crate::ring::render_leg_factors(fk, &e_names, 0))
                            }
                        }
                    }
                    legs.push(lf);
                }
                if self.legs == 1 {
                    factors.extend(legs.pop().unwrap_or_default());
                } else {
                    let parts: Vec<String> = legs
                        .into_iter()
                        .map(|lf| if lf.is_empty() { "1".to_string() } else { lf.join("*") })
                        .collect();
                    factors.push(format!("({})", parts.join(" ⊗ ")));
                }
                crate::ring::push_signed_term(&mut out, first, q, &factors);
                first = false;
            }
        }
        out
    }
}

/// Merges adjacent `Fn` letters, drops units, and removes a leading `Fn`
/// letter, returning it for absorption into the coefficient.
pub(crate) fn canonicalize_word(w: &mut Word) -> Option<RingKey> {
    if !w.iter().any(|l| matches!(l, Letter::Fn(_))) {
        return None;
    }
    let mut out: Word = Vec::with_capacity(w.len());
    for letter in w.drain(..) {
        match letter {
            Letter::Fn(k) => {
                if let Some(Letter::Fn(prev)) = out.last() {
                    let merged = prev.combine(&k);
                    out.pop();
                    if !merged.is_unit() {
                        out.push(Letter::Fn(merged));
                    }
                } else if !k.is_unit() {
                    out.push(Letter::Fn(k));
                }
            }
            g => out.push(g),
        }
    }
    let lead = match out.first() {
        Some(Letter::Fn(k)) => Some(k.clone()),
        _ => None,
    };
    if lead.is_some() {
        out.remove(0);
    }
    *w = out;
    lead
}

pub(crate) fn add_term(terms: &mut BTreeMap<Vec<Word>, CoeffElem>, words: Vec<Word>, c: CoeffElem) {
    if c.is_zero() {
        return;
    }
    match terms.entry(words) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign(&c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for QuantumElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n_ord = self
            .terms
            .keys()
            .flat_map(|ws| ws.iter().flatten())
            .filter_map(|l| match l {
                Letter::Gen(g) => Some(*g as usize + 1),
                Letter::Fn(_) => None,
            })
            .max()
            .unwrap_or(0);
        f.write_str(&self.render(&Layout::anonymous(self.n_e, n_ord)))
    }
}
