//! The exact coefficient ring.
//!
//! Every scalar function the algebras need is a finite sum of monomials
//!
//! ```text
//! q * z^k * hbar^m * E^alpha * exp(z * (a.E + c*hbar + d))
//! ```
//!
//! with `q`, `a`, `c`, `d` rational, over a fixed list of exponential-capable
//! generators `E`. Distinct keys are linearly independent as functions of
//! `(z, hbar, E)`, so structural equality of the canonical form decides
//! equality of the functions.

mod poly;
mod render;

pub use poly::PolyElem;
pub use render::{render_linear, render_rational};
pub(crate) use render::{
    key_leg_factors as render_leg_factors, push_term as push_signed_term,
    scalar_factors as render_scalar_factors,
};

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers. Backed by `num`'s arbitrary precision rationals,
/// which keep the denominator positive and the fraction reduced.
pub type Rational = num::BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Exponent index of one coefficient monomial.
///
/// The derived ordering is the canonical one: `(zpow, hpow, polydeg,
/// expweight, hbar_expweight, const_expweight)` lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingKey {
    pub zpow: i32,
    pub hpow: i32,
    pub polydeg: Vec<u32>,
    pub expweight: Vec<Rational>,
    pub hbar_expweight: Rational,
    pub const_expweight: Rational,
}

impl RingKey {
    pub fn unit(rank: usize) -> Self {
        RingKey {
            zpow: 0,
            hpow: 0,
            polydeg: vec![0; rank],
            expweight: vec![Rational::zero(); rank],
            hbar_expweight: Rational::zero(),
            const_expweight: Rational::zero(),
        }
    }

    pub fn rank(&self) -> usize {
        self.polydeg.len()
    }

    pub fn combine(&self, other: &RingKey) -> RingKey {
        debug_assert_eq!(self.rank(), other.rank());
        RingKey {
            zpow: self.zpow + other.zpow,
            hpow: self.hpow + other.hpow,
            polydeg: self
                .polydeg
                .iter()
                .zip(&other.polydeg)
                .map(|(a, b)| a + b)
                .collect(),
            expweight: self
                .expweight
                .iter()
                .zip(&other.expweight)
                .map(|(a, b)| a + b)
                .collect(),
            hbar_expweight: &self.hbar_expweight + &other.hbar_expweight,
            const_expweight: &self.const_expweight + &other.const_expweight,
        }
    }

    pub fn has_exp(&self) -> bool {
        self.expweight.iter().any(|a| !a.is_zero())
            || !self.hbar_expweight.is_zero()
            || !self.const_expweight.is_zero()
    }

    /// True when the key depends on none of the E variables.
    pub fn is_scalar(&self) -> bool {
        self.polydeg.iter().all(|&d| d == 0) && self.expweight.iter().all(Zero::is_zero)
    }

    /// True when the key depends on no E variable inside `range`.
    pub fn is_free_of(&self, range: std::ops::Range<usize>) -> bool {
        range
            .clone()
            .all(|i| self.polydeg[i] == 0 && self.expweight[i].is_zero())
    }

    /// The linear form `a.E + c*hbar + d` inside the exponential.
    fn exponent_poly(&self) -> PolyElem {
        let rank = self.rank();
        let mut p = PolyElem::constant(rank, self.const_expweight.clone());
        p = p.add(&PolyElem::hbar(rank).scale(&self.hbar_expweight));
        for (i, a) in self.expweight.iter().enumerate() {
            if !a.is_zero() {
                p = p.add(&PolyElem::var(rank, i).scale(a));
            }
        }
        p
    }

    /// The exponential-free part `E^alpha * hbar^m` as a polynomial.
    fn prefactor_poly(&self, q: &Rational) -> PolyElem {
        PolyElem::monomial(self.polydeg.clone(), self.hpow, q.clone())
    }

    /// True when the key has no E dependence and no scalar factor at all.
    pub fn is_unit(&self) -> bool {
        self.zpow == 0 && self.hpow == 0 && self.is_scalar() && !self.has_exp()
    }

    /// The scalar part (z, hbar and the scalar exponential) as a key of
    /// rank `rank`.
    pub fn scalar_part(&self, rank: usize) -> RingKey {
        let mut k = RingKey::unit(rank);
        k.zpow = self.zpow;
        k.hpow = self.hpow;
        k.hbar_expweight = self.hbar_expweight.clone();
        k.const_expweight = self.const_expweight.clone();
        k
    }

    /// The E-dependent part, with no scalar factor.
    pub fn e_part(&self) -> RingKey {
        let mut k = RingKey::unit(self.rank());
        k.polydeg = self.polydeg.clone();
        k.expweight = self.expweight.clone();
        k
    }

    pub fn embed(&self, rank: usize, offset: usize) -> RingKey {
        let mut polydeg = vec![0; rank];
        let mut expweight = vec![Rational::zero(); rank];
        for i in 0..self.rank() {
            polydeg[offset + i] = self.polydeg[i];
            expweight[offset + i] = self.expweight[i].clone();
        }
        RingKey {
            zpow: self.zpow,
            hpow: self.hpow,
            polydeg,
            expweight,
            hbar_expweight: self.hbar_expweight.clone(),
            const_expweight: self.const_expweight.clone(),
        }
    }

    /// Splits off the variables in `range` as a rank-`range.len()` key; the
    /// scalar part stays with the remainder.
    pub fn split_range(&self, range: std::ops::Range<usize>) -> (RingKey, RingKey) {
        let mut part = RingKey::unit(range.len());
        let mut rest = self.clone();
        for (j, i) in range.enumerate() {
            part.polydeg[j] = self.polydeg[i];
            part.expweight[j] = self.expweight[i].clone();
            rest.polydeg[i] = 0;
            rest.expweight[i] = Rational::zero();
        }
        (part, rest)
    }
}

/// Affine image `coeffs.E' + hbar*hbar_part + constant` of one E variable
/// under a substitution into a ring of rank `coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearImage {
    pub coeffs: Vec<Rational>,
    pub hbar: Rational,
    pub constant: Rational,
}

impl LinearImage {
    pub fn var(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); rank];
        coeffs[i] = Rational::one();
        LinearImage {
            coeffs,
            hbar: Rational::zero(),
            constant: Rational::zero(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LinearImage {
            coeffs: vec![Rational::zero(); rank],
            hbar: Rational::zero(),
            constant: Rational::zero(),
        }
    }

    fn poly(&self) -> PolyElem {
        let rank = self.coeffs.len();
        let mut p = PolyElem::constant(rank, self.constant.clone());
        p = p.add(&PolyElem::hbar(rank).scale(&self.hbar));
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                p = p.add(&PolyElem::var(rank, i).scale(a));
            }
        }
        p
    }
}

/// An element of the coefficient ring in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffElem {
    rank: usize,
    terms: BTreeMap<RingKey, Rational>,
}

impl CoeffElem {
    pub fn zero(rank: usize) -> Self {
        CoeffElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_key(RingKey::unit(rank), Rational::one())
    }

    pub fn scalar(rank: usize, q: Rational) -> Self {
        Self::from_key(RingKey::unit(rank), q)
    }

    pub fn from_key(key: RingKey, q: Rational) -> Self {
        let rank = key.rank();
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(key, q);
        }
        CoeffElem { rank, terms }
    }

    /// The exponential-free polynomial as a ring element.
    pub fn from_poly(p: &PolyElem) -> Self {
        let mut out = CoeffElem::zero(p.rank());
        for ((deg, hpow), q) in p.terms() {
            let mut key = RingKey::unit(p.rank());
            key.polydeg = deg.clone();
            key.hpow = *hpow;
            out.push(key, q.clone());
        }
        out
    }

    pub fn z(rank: usize) -> Self {
        Self::z_pow(rank, 1)
    }

    pub fn z_pow(rank: usize, k: i32) -> Self {
        let mut key = RingKey::unit(rank);
        key.zpow = k;
        Self::from_key(key, Rational::one())
    }

    pub fn hbar(rank: usize) -> Self {
        Self::hbar_pow(rank, 1)
    }

    pub fn hbar_pow(rank: usize, m: i32) -> Self {
        let mut key = RingKey::unit(rank);
        key.hpow = m;
        Self::from_key(key, Rational::one())
    }

    /// The E variable with index `i`.
    pub fn var(rank: usize, i: usize) -> Self {
        let mut key = RingKey::unit(rank);
        key.polydeg[i] = 1;
        Self::from_key(key, Rational::one())
    }

    /// `exp(z * (a.E + c*hbar + d))`.
    pub fn exp_linear(a: Vec<Rational>, c: Rational, d: Rational) -> Self {
        let mut key = RingKey::unit(a.len());
        key.expweight = a;
        key.hbar_expweight = c;
        key.const_expweight = d;
        Self::from_key(key, Rational::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(k, q)| *k == RingKey::unit(self.rank) && q.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RingKey, &Rational)> {
        self.terms.iter()
    }

    /// The constant rational when the element is `q * 1`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        match self.terms.iter().next() {
            Some((k, q)) if self.terms.len() == 1 && *k == RingKey::unit(self.rank) => {
                Some(q.clone())
            }
            _ => None,
        }
    }

    /// True when no term depends on the E variables.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(RingKey::is_scalar)
    }

    pub fn is_free_of(&self, range: std::ops::Range<usize>) -> bool {
        self.terms.keys().all(|k| k.is_free_of(range.clone()))
    }

    fn push(&mut self, key: RingKey, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(key);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CoeffElem) -> CoeffElem {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.push(k.clone(), q.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &CoeffElem) {
        debug_assert_eq!(self.rank, other.rank);
        for (k, q) in &other.terms {
            self.push(k.clone(), q.clone());
        }
    }

    pub fn sub(&self, other: &CoeffElem) -> CoeffElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CoeffElem {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, q: &Rational) -> CoeffElem {
        if q.is_zero() {
            return CoeffElem::zero(self.rank);
        }
        CoeffElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * q))
                .collect(),
        }
    }

    pub fn mul(&self, other: &CoeffElem) -> CoeffElem {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = CoeffElem::zero(self.rank);
        for (k1, q1) in &self.terms {
            for (k2, q2) in &other.terms {
                out.push(k1.combine(k2), q1 * q2);
            }
        }
        out
    }

    pub fn mul_key(&self, key: &RingKey, q: &Rational) -> CoeffElem {
        let mut out = CoeffElem::zero(self.rank);
        for (k, c) in &self.terms {
            out.push(k.combine(key), c * q);
        }
        out
    }

    pub fn pow(&self, n: u32) -> CoeffElem {
        let mut acc = CoeffElem::one(self.rank);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a single monomial without polynomial part.
    pub fn inverse(&self) -> Option<CoeffElem> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, q) = self.terms.iter().next()?;
        if k.polydeg.iter().any(|&d| d != 0) {
            return None;
        }
        let key = RingKey {
            zpow: -k.zpow,
            hpow: -k.hpow,
            polydeg: k.polydeg.clone(),
            expweight: k.expweight.iter().map(|a| -a).collect(),
            hbar_expweight: -&k.hbar_expweight,
            const_expweight: -&k.const_expweight,
        };
        Some(CoeffElem::from_key(key, q.recip()))
    }

    /// Multiplies by `hbar^m`; `m = -1` is the exact division used by the
    /// Poisson limit.
    pub fn mul_hbar_pow(&self, m: i32) -> CoeffElem {
        CoeffElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, q)| {
                    let mut k = k.clone();
                    k.hpow += m;
                    (k, q.clone())
                })
                .collect(),
        }
    }

    pub fn mul_z_pow(&self, k: i32) -> CoeffElem {
        CoeffElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(key, q)| {
                    let mut key = key.clone();
                    key.zpow += k;
                    (key, q.clone())
                })
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `E_i`.
    pub fn derive(&self, i: usize) -> CoeffElem {
        let mut out = CoeffElem::zero(self.rank);
        for (k, q) in &self.terms {
            let alpha = k.polydeg[i];
            if alpha > 0 {
                let mut k2 = k.clone();
                k2.polydeg[i] -= 1;
                out.push(k2, q * int(alpha as i64));
            }
            let a = &k.expweight[i];
            if !a.is_zero() {
                let mut k2 = k.clone();
                k2.zpow += 1;
                out.push(k2, q * a);
            }
        }
        out
    }

    pub fn derive_n(&self, i: usize, order: u32) -> CoeffElem {
        let mut x = self.clone();
        for _ in 0..order {
            x = x.derive(i);
        }
        x
    }

    /// Exact substitution `E -> E + hbar*s`.
    pub fn shift(&self, s: &[Rational]) -> CoeffElem {
        self.shift_affine(s, &vec![Rational::zero(); self.rank])
    }

    /// Exact substitution `E -> E + hbar*s + t`.
    pub fn shift_affine(&self, s: &[Rational], t: &[Rational]) -> CoeffElem {
        assert_eq!(s.len(), self.rank);
        assert_eq!(t.len(), self.rank);
        let images: Vec<LinearImage> = (0..self.rank)
            .map(|i| {
                let mut img = LinearImage::var(self.rank, i);
                img.hbar = s[i].clone();
                img.constant = t[i].clone();
                img
            })
            .collect();
        self.substitute(self.rank, &images)
    }

    /// Ring morphism sending `E_i` to the affine form `images[i]` in a ring of
    /// rank `target_rank`; exponentials follow their (linear) arguments.
    pub fn substitute(&self, target_rank: usize, images: &[LinearImage]) -> CoeffElem {
        assert_eq!(images.len(), self.rank);
        let image_polys: Vec<PolyElem> = images.iter().map(LinearImage::poly).collect();
        let mut out = CoeffElem::zero(target_rank);
        for (k, q) in &self.terms {
            let mut base = RingKey::unit(target_rank);
            base.zpow = k.zpow;
            base.hpow = k.hpow;
            base.hbar_expweight = k.hbar_expweight.clone();
            base.const_expweight = k.const_expweight.clone();
            for (a, img) in k.expweight.iter().zip(images) {
                if a.is_zero() {
                    continue;
                }
                for (j, c) in img.coeffs.iter().enumerate() {
                    base.expweight[j] += a * c;
                }
                base.hbar_expweight += a * &img.hbar;
                base.const_expweight += a * &img.constant;
            }
            let mut poly = PolyElem::constant(target_rank, q.clone());
            for (d, p) in k.polydeg.iter().zip(&image_polys) {
                if *d > 0 {
                    poly = poly.mul(&p.pow(*d));
                }
            }
            for (pk, pq) in poly.terms() {
                let mut key = base.clone();
                key.polydeg = pk.0.clone();
                key.hpow += pk.1;
                out.push(key, pq.clone());
            }
        }
        out
    }

    /// Places this element's variables at `offset..offset+rank` of a ring of
    /// rank `rank`.
    pub fn embed(&self, rank: usize, offset: usize) -> CoeffElem {
        assert!(offset + self.rank <= rank);
        CoeffElem {
            rank,
            terms: self
                .terms
                .iter()
                .map(|(k, q)| (k.embed(rank, offset), q.clone()))
                .collect(),
        }
    }

    /// Keeps only variables `range`; panics if the element depends on others.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> CoeffElem {
        let mut out = CoeffElem::zero(range.len());
        for (k, q) in &self.terms {
            let (part, rest) = k.split_range(range.clone());
            assert!(rest.is_scalar(), "element depends on variables outside the range");
            let mut part = part;
            part.zpow = rest.zpow;
            part.hpow = rest.hpow;
            part.hbar_expweight = rest.hbar_expweight;
            part.const_expweight = rest.const_expweight;
            out.push(part, q.clone());
        }
        out
    }

    /// Minimum hbar power over all keys (`None` for zero).
    pub fn hbar_valuation(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.hpow).min()
    }

    pub fn z_valuation(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.zpow).min()
    }

    /// Expands `exp(z*hbar*c)` factors in hbar and splits by total hbar degree,
    /// keeping degrees `<= max_degree`.
    fn hbar_expansion(&self, max_degree: i32) -> BTreeMap<i32, CoeffElem> {
        let mut by_degree: BTreeMap<i32, CoeffElem> = BTreeMap::new();
        for (k, q) in &self.terms {
            if k.hpow > max_degree {
                continue;
            }
            let span = (max_degree - k.hpow) as u32;
            let c = &k.hbar_expweight;
            let mut cpow = Rational::one();
            for n in 0..=span {
                if n > 0 {
                    if c.is_zero() {
                        break;
                    }
                    cpow = &cpow * c;
                }
                let mut k2 = k.clone();
                k2.zpow += n as i32;
                k2.hpow = 0;
                k2.hbar_expweight = Rational::zero();
                let coeff = q * &cpow / factorial(n);
                by_degree
                    .entry(k.hpow + n as i32)
                    .or_insert_with(|| CoeffElem::zero(self.rank))
                    .push(k2, coeff);
            }
        }
        by_degree.retain(|_, v| !v.is_zero());
        by_degree
    }

    /// The `hbar -> 0` limit: the hbar-degree-zero part of the exact series.
    pub fn limit_hbar0(&self) -> Result<CoeffElem> {
        let mut parts = self.hbar_expansion(0);
        if let Some((&d, residual)) = parts.iter().next() {
            if d < 0 {
                let residual = residual.mul_hbar_pow(d);
                return Err(Error::NegativeHbarValuation {
                    residual: residual.to_string(),
                });
            }
        }
        Ok(parts.remove(&0).unwrap_or_else(|| CoeffElem::zero(self.rank)))
    }

    /// Substitutes `hbar = 1`.
    pub fn at_hbar_one(&self) -> CoeffElem {
        let mut out = CoeffElem::zero(self.rank);
        for (k, q) in &self.terms {
            let mut k2 = k.clone();
            k2.hpow = 0;
            k2.const_expweight += &k2.hbar_expweight;
            k2.hbar_expweight = Rational::zero();
            out.push(k2, q.clone());
        }
        out
    }

    /// The substitution `E -> hbar*E`, `z -> z/hbar`. Fails on `exp(z*d)`
    /// factors, whose image `exp(z*d/hbar)` leaves the ring.
    pub fn rescale(&self) -> Result<CoeffElem> {
        let mut out = CoeffElem::zero(self.rank);
        for (k, q) in &self.terms {
            if !k.const_expweight.is_zero() {
                return Err(Error::Unrepresentable(format!(
                    "rescaling exp(z*{}) gives exp(z*{}/hbar)",
                    k.const_expweight, k.const_expweight
                )));
            }
            let deg: u32 = k.polydeg.iter().sum();
            let mut k2 = k.clone();
            k2.hpow += deg as i32 - k.zpow;
            k2.const_expweight = k.hbar_expweight.clone();
            k2.hbar_expweight = Rational::zero();
            out.push(k2, q.clone());
        }
        Ok(out)
    }

    /// Full z-expansion up to `max_degree`, keyed by z-degree.
    fn z_expansion(&self, max_degree: i32) -> BTreeMap<i32, PolyElem> {
        let mut by_degree: BTreeMap<i32, PolyElem> = BTreeMap::new();
        for (k, q) in &self.terms {
            if k.zpow > max_degree {
                continue;
            }
            let span = (max_degree - k.zpow) as u32;
            let base = k.prefactor_poly(q);
            let lin = k.exponent_poly();
            let mut lin_pow = PolyElem::constant(self.rank, Rational::one());
            for n in 0..=span {
                if n > 0 {
                    if lin.is_zero() {
                        break;
                    }
                    lin_pow = lin_pow.mul(&lin);
                }
                let term = base.mul(&lin_pow).scale(&factorial(n).recip());
                let slot = by_degree
                    .entry(k.zpow + n as i32)
                    .or_insert_with(|| PolyElem::zero(self.rank));
                *slot = slot.add(&term);
            }
        }
        by_degree.retain(|_, v| !v.is_zero());
        by_degree
    }

    /// Coefficient of `z^n` in the full z-expansion.
    pub fn z_series_coeff(&self, n: u32) -> Result<PolyElem> {
        let mut parts = self.z_expansion(n as i32);
        if let Some((&d, residual)) = parts.iter().next() {
            if d < 0 {
                return Err(Error::NegativeZValuation {
                    residual: format!("z^{} * ({})", d, residual),
                });
            }
        }
        Ok(parts
            .remove(&(n as i32))
            .unwrap_or_else(|| PolyElem::zero(self.rank)))
    }

    /// The `z -> 0` limit as an exponential-free polynomial.
    pub fn limit_z0(&self) -> Result<PolyElem> {
        self.z_series_coeff(0)
    }

    /// Renders with the given names for the E variables.
    pub fn render(&self, names: &[&str]) -> String {
        render::render_coeff(self, names)
    }
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.rank).map(|i| format!("E{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

/// `sinh(z*(a.E + c*hbar + d))` written through exponentials.
pub fn sinh_linear(a: Vec<Rational>, c: Rational, d: Rational) -> CoeffElem {
    let p = CoeffElem::exp_linear(a.clone(), c.clone(), d.clone());
    let m = CoeffElem::exp_linear(a.iter().map(|x| -x).collect(), -c, -d);
    p.sub(&m).scale(&rat(1, 2))
}

/// `cosh(z*(a.E + c*hbar + d))` written through exponentials.
pub fn cosh_linear(a: Vec<Rational>, c: Rational, d: Rational) -> CoeffElem {
    let p = CoeffElem::exp_linear(a.clone(), c.clone(), d.clone());
    let m = CoeffElem::exp_linear(a.iter().map(|x| -x).collect(), -c, -d);
    p.add(&m).scale(&rat(1, 2))
}
