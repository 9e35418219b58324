//! Normal ordering by term rewriting.

use std::collections::{BTreeMap, HashMap};

use num::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::elem::{add_term, canonicalize_word, Letter, QuantumElem, Word};
use crate::error::{Error, Result};
use crate::ring::{CoeffElem, Rational, RingKey};
use crate::spec::{AlgebraSpec, GenRef, Mode, ReorderRule};

/// Default number of rule applications per normalization.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// One summand of a rewrite: `q * scalar * Fn(e) * word`, spliced in place
/// of the redex. `scalar` has rank zero and is widened on use.
#[derive(Clone, Debug)]
struct Piece {
    e: Option<RingKey>,
    scalar: RingKey,
    q: Rational,
    word: Word,
}

fn pieces_of(c: &CoeffElem, word: &Word, out: &mut Vec<Piece>) {
    for (k, q) in c.terms() {
        let e = k.e_part();
        out.push(Piece {
            e: if e.is_unit() { None } else { Some(e) },
            scalar: k.scalar_part(0),
            q: q.clone(),
            word: word.clone(),
        });
    }
}

/// Rewrite rules of one quantum algebra, with a cache of reorder results.
pub struct Rewriter<'a> {
    spec: &'a AlgebraSpec,
    /// `swap[a][b]` for `a > b` (normal-order indices): the pieces of `[a, b]`.
    swap: Vec<Vec<Vec<Piece>>>,
    reorder_cache: HashMap<(u16, RingKey), Vec<Piece>>,
    applied: u64,
}

impl<'a> Rewriter<'a> {
    pub fn new(spec: &'a AlgebraSpec) -> Result<Self> {
        if spec.mode != Mode::Quantum {
            return Err(Error::WrongMode { expected: "quantum" });
        }
        let n = spec.n_ord();
        let mut swap = vec![vec![Vec::new(); n]; n];
        for (a, row) in swap.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate().take(a) {
                let value = spec.quantum_bracket_value(
                    spec.decl_index(GenRef::Ord(a)),
                    spec.decl_index(GenRef::Ord(b)),
                )?;
                for (words, c) in value.terms() {
                    pieces_of(c, &words[0], slot);
                }
            }
        }
        Ok(Rewriter {
            spec,
            swap,
            reorder_cache: HashMap::new(),
            applied: 0,
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.spec
    }

    /// Rule applications performed so far by this rewriter.
    pub fn applied(&self) -> u64 {
        self.applied
    }

    fn reorder_pieces(&mut self, x: u16, k: &RingKey) -> Result<&[Piece]> {
        let key = (x, k.clone());
        if !self.reorder_cache.contains_key(&key) {
            let rule = self.spec.reorder.get(&(x as usize)).ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "no reorder rule moves `{}` past functions of the exponential-capable generators",
                    self.spec.layout.ord_names[x as usize]
                ))
            })?;
            let f = CoeffElem::from_key(k.clone(), Rational::one());
            let mut out = Vec::new();
            match rule {
                ReorderRule::Shift {
                    hbar_shift,
                    const_shift,
                } => {
                    let g = f.shift_affine(hbar_shift, const_shift);
                    pieces_of(&g, &vec![Letter::Gen(x)], &mut out);
                }
                ReorderRule::Differential(terms) => {
                    for t in terms {
                        let g = t.coeff.mul(&f.derive_n(0, t.order));
                        let word: Word = t.word.iter().map(|&g| Letter::Gen(g as u16)).collect();
                        pieces_of(&g, &word, &mut out);
                    }
                }
            }
            self.reorder_cache.insert(key.clone(), out);
        }
        Ok(&self.reorder_cache[&key])
    }

    /// The normal form of `x`.
    pub fn normalize(&mut self, x: &QuantumElem, fuel: u64) -> Result<QuantumElem> {
        self.run(x, fuel, None)
    }

    /// The normal form reached by choosing redexes at random.
    pub fn normalize_randomized(
        &mut self,
        x: &QuantumElem,
        fuel: u64,
        rng: &mut ChaCha8Rng,
    ) -> Result<QuantumElem> {
        self.run(x, fuel, Some(rng))
    }

    fn run(&mut self, x: &QuantumElem, fuel: u64, mut rng: Option<&mut ChaCha8Rng>) -> Result<QuantumElem> {
        if x.n_e() != self.spec.n_e() {
            return Err(Error::InvalidSpec(format!(
                "element has {} exponential-capable generators per leg, algebra has {}",
                x.n_e(),
                self.spec.n_e()
            )));
        }
        let (legs, n_e) = (x.legs(), x.n_e());
        let mut pending = x.clone().into_terms();
        let mut done: BTreeMap<Vec<Word>, CoeffElem> = BTreeMap::new();
        let mut applied = 0u64;
        while let Some((words, c)) = pending.pop_first() {
            let site = match rng.as_deref_mut() {
                None => first_redex(&words),
                Some(r) => random_redex(&words, r),
            };
            let Some((leg, pos)) = site else {
                add_term(&mut done, words, c);
                continue;
            };
            if applied >= fuel {
                let mut one = BTreeMap::new();
                one.insert(words, c);
                return Err(Error::FuelExhausted {
                    applied,
                    term: QuantumElem::from_map(legs, n_e, one).render(&self.spec.layout),
                });
            }
            applied += 1;
            self.rewrite(&words, &c, leg, pos, &mut pending)?;
        }
        self.applied += applied;
        Ok(QuantumElem::from_map(legs, n_e, done))
    }

    fn rewrite(
        &mut self,
        words: &[Word],
        c: &CoeffElem,
        leg: usize,
        pos: usize,
        pending: &mut BTreeMap<Vec<Word>, CoeffElem>,
    ) -> Result<()> {
        let n_e = self.spec.n_e();
        let rank = c.rank();
        let w = &words[leg];
        let (prefix, suffix) = (&w[..pos], &w[pos + 2..]);
        let splice = |pending: &mut BTreeMap<Vec<Word>, CoeffElem>, p: &Piece, c: &CoeffElem| {
            let mut nw: Word = Vec::with_capacity(prefix.len() + p.word.len() + suffix.len() + 1);
            nw.extend_from_slice(prefix);
            if let Some(e) = &p.e {
                nw.push(Letter::Fn(e.clone()));
            }
            nw.extend(p.word.iter().cloned());
            nw.extend_from_slice(suffix);
            let mut coeff = c.mul_key(&p.scalar.scalar_part(rank), &p.q);
            if let Some(lead) = canonicalize_word(&mut nw) {
                coeff = coeff.mul_key(&lead.embed(rank, leg * n_e), &Rational::one());
            }
            let mut all = words.to_vec();
            all[leg] = nw;
            add_term(pending, all, coeff);
        };
        match (&w[pos], &w[pos + 1]) {
            (Letter::Gen(x), Letter::Fn(k)) => {
                let pieces = self.reorder_pieces(*x, k)?;
                for p in pieces {
                    splice(pending, p, c);
                }
            }
            (Letter::Gen(a), Letter::Gen(b)) => {
                let (a, b) = (*a, *b);
                let mut swapped = w.clone();
                swapped.swap(pos, pos + 1);
                let mut all = words.to_vec();
                all[leg] = swapped;
                add_term(pending, all, c.clone());
                for p in &self.swap[a as usize][b as usize] {
                    splice(pending, p, c);
                }
            }
            _ => unreachable!("not a redex"),
        }
        Ok(())
    }
}

fn is_redex(a: &Letter, b: &Letter) -> bool {
    match (a, b) {
        (Letter::Gen(_), Letter::Fn(_)) => true,
        (Letter::Gen(x), Letter::Gen(y)) => x > y,
        _ => false,
    }
}

fn first_redex(words: &[Word]) -> Option<(usize, usize)> {
    for (leg, w) in words.iter().enumerate() {
        if let Some(pos) = w.windows(2).position(|p| is_redex(&p[0], &p[1])) {
            return Some((leg, pos));
        }
    }
    None
}

fn random_redex(words: &[Word], rng: &mut ChaCha8Rng) -> Option<(usize, usize)> {
    let sites: Vec<(usize, usize)> = words
        .iter()
        .enumerate()
        .flat_map(|(leg, w)| {
            w.windows(2)
                .enumerate()
                .filter(|(_, p)| is_redex(&p[0], &p[1]))
                .map(move |(pos, _)| (leg, pos))
        })
        .collect();
    if sites.is_empty() {
        None
    } else {
        Some(sites[rng.gen_range(0..sites.len())])
    }
}

/// The normal form of `x` in `spec`.
pub fn normal_order(spec: &AlgebraSpec, x: &QuantumElem, fuel: u64) -> Result<QuantumElem> {
    Rewriter::new(spec)?.normalize(x, fuel)
}
