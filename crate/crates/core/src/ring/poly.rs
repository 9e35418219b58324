use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::Rational;

/// Exponential-free polynomial in the E variables and (Laurent in) hbar.
/// Target of the `z -> 0` limit and of z-series coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyElem {
    rank: usize,
    terms: BTreeMap<(Vec<u32>, i32), Rational>,
}

impl PolyElem {
    pub fn zero(rank: usize) -> Self {
        PolyElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, q: Rational) -> Self {
        Self::monomial(vec![0; rank], 0, q)
    }

    pub fn monomial(deg: Vec<u32>, hpow: i32, q: Rational) -> Self {
        let rank = deg.len();
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((deg, hpow), q);
        }
        PolyElem { rank, terms }
    }

    pub fn var(rank: usize, i: usize) -> Self {
        let mut deg = vec![0; rank];
        deg[i] = 1;
        Self::monomial(deg, 0, Rational::one())
    }

    pub fn hbar(rank: usize) -> Self {
        Self::monomial(vec![0; rank], 1, Rational::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u32>, i32), &Rational)> {
        self.terms.iter()
    }

    fn push(&mut self, key: (Vec<u32>, i32), q: Rational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PolyElem) -> PolyElem {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.push(k.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyElem) -> PolyElem {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> PolyElem {
        if q.is_zero() {
            return PolyElem::zero(self.rank);
        }
        PolyElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyElem) -> PolyElem {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = PolyElem::zero(self.rank);
        for ((d1, h1), q1) in &self.terms {
            for ((d2, h2), q2) in &other.terms {
                let deg = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
                out.push((deg, h1 + h2), q1 * q2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> PolyElem {
        let mut acc = PolyElem::constant(self.rank, Rational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree in the E variables of each term, if all terms agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(d, _)| d.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Places the variables at `offset..` of a ring of rank `rank`.
    pub fn embed(&self, rank: usize, offset: usize) -> PolyElem {
        PolyElem {
            rank,
            terms: self
                .terms
                .iter()
                .map(|((d, h), q)| {
                    let mut deg = vec![0; rank];
                    deg[offset..offset + d.len()].copy_from_slice(d);
                    ((deg, *h), q.clone())
                })
                .collect(),
        }
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, ((deg, h), q)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            if *h != 0 {
                factors.push(super::render::power("hbar", *h));
            }
            for (j, d) in deg.iter().enumerate() {
                if *d > 0 {
                    factors.push(super::render::power(names[j], *d as i32));
                }
            }
            super::render::push_term(&mut out, i == 0, q, &factors);
        }
        out
    }
}

impl fmt::Display for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.rank).map(|i| format!("E{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}
