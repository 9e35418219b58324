use std::collections::BTreeMap;
use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::ring::{CoeffElem, Rational};
use crate::spec::Layout;

/// Element of the commutative algebra `Fun(g_z)`, or of its `legs`-fold
/// tensor power.
///
/// Terms are keyed by the multidegree over the ordinary generators of every
/// leg (flattened, `legs * n_ord` entries); coefficients live in the ring over
/// the exponential-capable generators of every leg (`legs * n_e` variables).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoissonElem {
    legs: usize,
    n_e: usize,
    n_ord: usize,
    terms: BTreeMap<Vec<u32>, CoeffElem>,
}

/// Tensors are Poisson elements with more than one leg.
pub type TensorElem = PoissonElem;

impl PoissonElem {
    pub fn zero(legs: usize, n_e: usize, n_ord: usize) -> Self {
        PoissonElem {
            legs,
            n_e,
            n_ord,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.legs, self.n_e, self.n_ord)
    }

    pub fn from_coeff(legs: usize, n_e: usize, n_ord: usize, c: CoeffElem) -> Self {
        assert_eq!(c.rank(), legs * n_e);
        let mut out = Self::zero(legs, n_e, n_ord);
        out.push(vec![0; legs * n_ord], c);
        out
    }

    pub fn one(legs: usize, n_e: usize, n_ord: usize) -> Self {
        Self::from_coeff(legs, n_e, n_ord, CoeffElem::one(legs * n_e))
    }

    pub fn scalar(legs: usize, n_e: usize, n_ord: usize, q: Rational) -> Self {
        Self::from_coeff(legs, n_e, n_ord, CoeffElem::scalar(legs * n_e, q))
    }

    /// Ordinary generator `idx` placed in leg `leg`.
    pub fn ordinary(legs: usize, n_e: usize, n_ord: usize, leg: usize, idx: usize) -> Self {
        let mut mono = vec![0; legs * n_ord];
        mono[leg * n_ord + idx] = 1;
        let mut out = Self::zero(legs, n_e, n_ord);
        out.push(mono, CoeffElem::one(legs * n_e));
        out
    }

    /// Exponential-capable generator `idx` placed in leg `leg`.
    pub fn exp_var(legs: usize, n_e: usize, n_ord: usize, leg: usize, idx: usize) -> Self {
        Self::from_coeff(legs, n_e, n_ord, CoeffElem::var(legs * n_e, leg * n_e + idx))
    }

    pub fn from_terms(
        legs: usize,
        n_e: usize,
        n_ord: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, CoeffElem)>,
    ) -> Self {
        let mut out = Self::zero(legs, n_e, n_ord);
        for (m, c) in terms {
            out.push(m, c);
        }
        out
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn n_e(&self) -> usize {
        self.n_e
    }

    pub fn n_ord(&self) -> usize {
        self.n_ord
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CoeffElem)> {
        self.terms.iter()
    }

    /// The coefficient when the element has no ordinary generators.
    pub fn as_coeff(&self) -> Option<CoeffElem> {
        if self.terms.is_empty() {
            return Some(CoeffElem::zero(self.rank()));
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next()?;
            if m.iter().all(|&d| d == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub(crate) fn push(&mut self, mono: Vec<u32>, c: CoeffElem) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
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

    fn check_shape(&self, other: &PoissonElem) -> Result<()> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch {
                left: self.legs,
                right: other.legs,
            });
        }
        debug_assert_eq!((self.n_e, self.n_ord), (other.n_e, other.n_ord));
        Ok(())
    }

    pub fn add(&self, other: &PoissonElem) -> PoissonElem {
        self.check_shape(other).expect("adding elements with different leg counts");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &PoissonElem) {
        self.check_shape(other).expect("adding elements with different leg counts");
        for (m, c) in &other.terms {
            self.push(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &PoissonElem) -> PoissonElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PoissonElem {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, q: &Rational) -> PoissonElem {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, k: &CoeffElem) -> PoissonElem {
        self.map_coeffs(|c| c.mul(k))
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffElem) -> CoeffElem) -> PoissonElem {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            out.push(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs(
        &self,
        f: impl Fn(&CoeffElem) -> Result<CoeffElem>,
    ) -> Result<PoissonElem> {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            out.push(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Commutative product.
    pub fn mul(&self, other: &PoissonElem) -> PoissonElem {
        self.check_shape(other).expect("multiplying elements with different leg counts");
        let mut out = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.push(m, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> PoissonElem {
        let mut acc = PoissonElem::one(self.legs, self.n_e, self.n_ord);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self ⊗ other`, with legs concatenated.
    pub fn tensor(&self, other: &PoissonElem) -> PoissonElem {
        let legs = self.legs + other.legs;
        let rank = legs * self.n_e;
        let mut out = PoissonElem::zero(legs, self.n_e, self.n_ord);
        for (m1, c1) in &self.terms {
            let c1 = c1.embed(rank, 0);
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                let c2 = c2.embed(rank, self.rank());
                out.push(m, c1.mul(&c2));
            }
        }
        out
    }

    /// Places this element's legs at `leg..leg + self.legs()` of a
    /// `legs`-fold tensor power.
    pub fn embed_leg(&self, legs: usize, leg: usize) -> PoissonElem {
        assert!(leg + self.legs <= legs);
        let width = self.legs * self.n_ord;
        let mut out = PoissonElem::zero(legs, self.n_e, self.n_ord);
        for (m, c) in &self.terms {
            let mut mono = vec![0; legs * self.n_ord];
            mono[leg * self.n_ord..leg * self.n_ord + width].copy_from_slice(m);
            out.push(mono, c.embed(legs * self.n_e, leg * self.n_e));
        }
        out
    }

    /// Partial derivative with respect to ordinary generator `idx` of `leg`.
    pub fn d_ordinary(&self, leg: usize, idx: usize) -> PoissonElem {
        let slot = leg * self.n_ord + idx;
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let d = m[slot];
            if d > 0 {
                let mut m2 = m.clone();
                m2[slot] -= 1;
                out.push(m2, c.scale(&Rational::from_integer(d.into())));
            }
        }
        out
    }

    /// Partial derivative with respect to exponential-capable generator
    /// `idx` of `leg` (chain rule through the coefficient ring).
    pub fn d_exp(&self, leg: usize, idx: usize) -> PoissonElem {
        let var = leg * self.n_e + idx;
        self.map_coeffs(|c| c.derive(var))
    }

    /// Total degree in ordinary generators, per term.
    pub fn max_ordinary_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_scalar_coeff(&self) -> bool {
        self.as_coeff().is_some_and(|c| c.is_scalar())
    }

    /// Canonical text in the definition language.
    pub fn render(&self, layout: &Layout) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let e_names: Vec<&str> = layout.e_names.iter().map(String::as_str).collect();
        let mut out = String::new();
        let mut first = true;
        for (m, c) in &self.terms {
            for (k, q) in c.terms() {
                let mut factors = crate::ring::render_scalar_factors(k);
                let mut legs = Vec::new();
                for leg in 0..self.legs {
                    let mut lf = crate::ring::render_leg_factors(k, &e_names, leg * self.n_e);
                    for (j, name) in layout.ord_names.iter().enumerate() {
                        let d = m[leg * self.n_ord + j];
                        if d == 1 {
                            lf.push(name.clone());
                        } else if d > 1 {
                            lf.push(format!("{}^{}", name, d));
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

impl fmt::Display for PoissonElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layout = Layout::anonymous(self.n_e, self.n_ord);
        f.write_str(&self.render(&layout))
    }
}
