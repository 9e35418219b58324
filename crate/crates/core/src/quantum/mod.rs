//! The noncommutative engine: words over the ordinary generators with
//! coefficients on the left, normal ordering, commutators, the hbar -> 0
//! limit onto Poisson elements, and the reabsorption map.

mod elem;
mod order;

#[cfg(test)]
mod tests;

pub use elem::{Letter, QTensorElem, QuantumElem, Word};
pub use order::{normal_order, Rewriter, DEFAULT_FUEL};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::morphism::{all_e_images, embed_image, identity_e, linear_image, LegImages};
use crate::poisson::PoissonElem;
use crate::ring::{CoeffElem, LinearImage};
use crate::spec::{AlgebraSpec, GenRef};

/// `NF(xy - yx)`.
pub fn q_commutator(spec: &AlgebraSpec, x: &QuantumElem, y: &QuantumElem, fuel: u64) -> Result<QuantumElem> {
    Rewriter::new(spec)?.commutator(x, y, fuel)
}

/// `NF(xy + yx)`.
pub fn q_anticommutator(spec: &AlgebraSpec, x: &QuantumElem, y: &QuantumElem, fuel: u64) -> Result<QuantumElem> {
    Rewriter::new(spec)?.anticommutator(x, y, fuel)
}

impl Rewriter<'_> {
    pub fn commutator(&mut self, x: &QuantumElem, y: &QuantumElem, fuel: u64) -> Result<QuantumElem> {
        let raw = x.try_mul(y)?.sub(&y.mul(x));
        self.normalize(&raw, fuel)
    }

    pub fn anticommutator(&mut self, x: &QuantumElem, y: &QuantumElem, fuel: u64) -> Result<QuantumElem> {
        let raw = x.try_mul(y)?.add(&y.mul(x));
        self.normalize(&raw, fuel)
    }
}

/// Outcome of normalizing once deterministically and once with random
/// redex choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub deterministic: QuantumElem,
    pub randomized: QuantumElem,
}

impl ProbeOutcome {
    pub fn agrees(&self) -> bool {
        self.deterministic == self.randomized
    }
}

/// Confluence probe: the two normal forms of `x` should coincide.
pub fn confluence_probe(spec: &AlgebraSpec, x: &QuantumElem, fuel: u64, seed: u64) -> Result<ProbeOutcome> {
    let mut rw = Rewriter::new(spec)?;
    let deterministic = rw.normalize(x, fuel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let randomized = rw.normalize_randomized(x, fuel, &mut rng)?;
    Ok(ProbeOutcome {
        deterministic,
        randomized,
    })
}

fn check_layouts(spec_q: &AlgebraSpec, spec_p: &AlgebraSpec) -> Result<()> {
    if spec_q.layout != spec_p.layout {
        return Err(Error::InvalidSpec(format!(
            "`{}` and `{}` have different generator layouts",
            spec_q.name, spec_p.name
        )));
    }
    Ok(())
}

/// Reads a normal form as a commutative element, coefficients untouched.
pub fn commutative_image(spec_p: &AlgebraSpec, x: &QuantumElem) -> Result<PoissonElem> {
    let (legs, n_e, n_ord) = (x.legs(), x.n_e(), spec_p.n_ord());
    let mut out = PoissonElem::zero(legs, n_e, n_ord);
    for (words, c) in x.terms() {
        let mut mono = vec![0u32; legs * n_ord];
        for (leg, w) in words.iter().enumerate() {
            for l in w {
                match l {
                    Letter::Gen(g) => mono[leg * n_ord + *g as usize] += 1,
                    Letter::Fn(_) => {
                        return Err(Error::InvalidSpec("element is not normal ordered".to_string()))
                    }
                }
            }
        }
        out.push(mono, c.clone());
    }
    Ok(out)
}

/// `lim_{hbar -> 0} x` after normal ordering.
pub fn hbar_limit(spec_q: &AlgebraSpec, spec_p: &AlgebraSpec, x: &QuantumElem, fuel: u64) -> Result<PoissonElem> {
    check_layouts(spec_q, spec_p)?;
    let nf = normal_order(spec_q, x, fuel)?;
    let lim = nf.try_map_coeffs(CoeffElem::limit_hbar0)?;
    commutative_image(spec_p, &lim)
}

/// `lim_{hbar -> 0} [x, y] / hbar`.
pub fn hbar_limit_bracket(
    spec_q: &AlgebraSpec,
    spec_p: &AlgebraSpec,
    x: &QuantumElem,
    y: &QuantumElem,
    fuel: u64,
) -> Result<PoissonElem> {
    check_layouts(spec_q, spec_p)?;
    let c = q_commutator(spec_q, x, y, fuel)?;
    let lim = c.try_map_coeffs(|k| k.mul_hbar_pow(-1).limit_hbar0())?;
    commutative_image(spec_p, &lim)
}

/// `lim_{hbar -> 0} Delta(g)` for generator `g` (declaration index).
pub fn hbar_limit_coproduct(spec_q: &AlgebraSpec, spec_p: &AlgebraSpec, g: usize, fuel: u64) -> Result<PoissonElem> {
    let value = spec_q
        .coproduct
        .get(&g)
        .ok_or_else(|| Error::IncompleteTable {
            table: "coproduct".to_string(),
            entry: spec_q.gen_name(g).to_string(),
        })?
        .as_quantum()?;
    hbar_limit(spec_q, spec_p, value, fuel)
}

/// The reabsorption substitution `X -> hbar*X`, `z -> z/hbar` on every
/// generator.
pub fn rescale_map(x: &QuantumElem) -> Result<QuantumElem> {
    x.try_map_terms(|words, c| {
        let mut extra: i32 = 0;
        for w in words {
            for l in w {
                extra += match l {
                    Letter::Gen(_) => 1,
                    Letter::Fn(k) => k.polydeg.iter().sum::<u32>() as i32,
                };
            }
        }
        Ok(c.rescale()?.mul_hbar_pow(extra))
    })
}

/// The algebra morphism extending `maps` (one per source leg). The result
/// is not normal ordered.
pub fn apply_morphism(
    x: &QuantumElem,
    maps: &[LegImages<QuantumElem>],
    target_legs: usize,
) -> Result<QuantumElem> {
    if maps.len() != x.legs() {
        return Err(Error::LegMismatch {
            left: x.legs(),
            right: maps.len(),
        });
    }
    let n_e = x.n_e();
    let rank = target_legs * n_e;
    let images = all_e_images(maps);
    let mut out = QuantumElem::zero(target_legs, n_e);
    for (words, c) in x.terms() {
        let mut acc = QuantumElem::from_coeff(target_legs, n_e, c.substitute(rank, &images));
        for (leg, w) in words.iter().enumerate() {
            for l in w {
                let img = match l {
                    Letter::Gen(g) => maps[leg].gens[*g as usize].clone(),
                    Letter::Fn(k) => {
                        let f = CoeffElem::from_key(k.clone(), num::One::one());
                        QuantumElem::from_coeff(target_legs, n_e, f.substitute(rank, &maps[leg].e))
                    }
                };
                acc = acc.mul(&img);
            }
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

/// Generator images of the coproduct table (two-leg target).
pub fn coproduct_images(spec: &AlgebraSpec) -> Result<LegImages<QuantumElem>> {
    let (n_e, n_ord) = (spec.n_e(), spec.n_ord());
    let mut gens = vec![QuantumElem::zero(2, n_e); n_ord];
    let mut e = vec![LinearImage::zero(2 * n_e); n_e];
    for g in 0..spec.n_gens() {
        let value = spec
            .coproduct
            .get(&g)
            .ok_or_else(|| Error::IncompleteTable {
                table: "coproduct".to_string(),
                entry: spec.gen_name(g).to_string(),
            })?
            .as_quantum()?;
        match spec.refs[g] {
            GenRef::Ord(o) => gens[o] = value.clone(),
            GenRef::E(i) => {
                let c = value
                    .as_coeff()
                    .ok_or_else(|| Error::NonLinearEImage(spec.gen_name(g).to_string()))?;
                e[i] = linear_image(&c, spec.gen_name(g))?;
            }
        }
    }
    Ok(LegImages { gens, e })
}

/// Identity on one leg, landing in leg `leg` of `legs`.
pub fn identity_images(spec: &AlgebraSpec, legs: usize, leg: usize) -> LegImages<QuantumElem> {
    let n_e = spec.n_e();
    LegImages {
        gens: (0..spec.n_ord())
            .map(|o| QuantumElem::generator(legs, n_e, leg, o))
            .collect(),
        e: identity_e(n_e, legs, leg),
    }
}

/// The counit: every generator to zero.
pub fn counit_images(spec: &AlgebraSpec, legs: usize) -> LegImages<QuantumElem> {
    let n_e = spec.n_e();
    LegImages {
        gens: vec![QuantumElem::zero(legs, n_e); spec.n_ord()],
        e: vec![LinearImage::zero(legs * n_e); n_e],
    }
}

/// Moves images with a `k`-leg target into legs `leg..leg+k` of `legs`.
pub fn shift_images(images: &LegImages<QuantumElem>, n_e: usize, legs: usize, leg: usize) -> LegImages<QuantumElem> {
    LegImages {
        gens: images.gens.iter().map(|g| g.embed_leg(legs, leg)).collect(),
        e: images.e.iter().map(|i| embed_image(i, n_e, legs, leg)).collect(),
    }
}

/// `NF(Delta(x))` for a one-leg element.
pub fn coproduct(spec: &AlgebraSpec, x: &QuantumElem, fuel: u64) -> Result<QTensorElem> {
    let raw = apply_morphism(x, &[coproduct_images(spec)?], 2)?;
    normal_order(spec, &raw, fuel)
}
