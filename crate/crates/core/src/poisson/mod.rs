//! The commutative Poisson-Hopf engine: brackets by Leibniz and chain rule,
//! coproducts as algebra morphisms, and z-expansion utilities.

mod elem;

#[cfg(test)]
mod tests;

pub use elem::{PoissonElem, TensorElem};

use crate::error::{Error, Result};
use crate::morphism::{all_e_images, embed_image, identity_e, linear_image, LegImages};
use crate::ring::{CoeffElem, LinearImage};
use crate::spec::{AlgebraSpec, GenRef, Mode};

/// The bracket table of a Poisson algebra, expanded to every ordered pair.
#[derive(Clone, Debug)]
pub struct BracketTable<'a> {
    spec: &'a AlgebraSpec,
    /// `table[a][b] = {a, b}` over declaration indices.
    table: Vec<Vec<PoissonElem>>,
}

impl<'a> BracketTable<'a> {
    pub fn new(spec: &'a AlgebraSpec) -> Result<Self> {
        if spec.mode != Mode::Poisson {
            return Err(Error::WrongMode { expected: "poisson" });
        }
        let n = spec.n_gens();
        let mut table = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                row.push(spec.poisson_bracket_value(a, b)?);
            }
            table.push(row);
        }
        Ok(BracketTable { spec, table })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.spec
    }

    fn partial(&self, x: &PoissonElem, leg: usize, g: usize) -> PoissonElem {
        match self.spec.refs[g] {
            GenRef::E(e) => x.d_exp(leg, e),
            GenRef::Ord(o) => x.d_ordinary(leg, o),
        }
    }

    /// `{x, y}` for elements with equal leg counts; legs bracket
    /// independently.
    pub fn bracket(&self, x: &PoissonElem, y: &PoissonElem) -> Result<PoissonElem> {
        if x.legs() != y.legs() {
            return Err(Error::LegMismatch {
                left: x.legs(),
                right: y.legs(),
            });
        }
        let legs = x.legs();
        let n = self.spec.n_gens();
        let mut out = x.zero_like();
        for leg in 0..legs {
            let dx: Vec<(usize, PoissonElem)> = (0..n)
                .map(|a| (a, self.partial(x, leg, a)))
                .filter(|(_, d)| !d.is_zero())
                .collect();
            if dx.is_empty() {
                continue;
            }
            let dy: Vec<(usize, PoissonElem)> = (0..n)
                .map(|b| (b, self.partial(y, leg, b)))
                .filter(|(_, d)| !d.is_zero())
                .collect();
            for (a, da) in &dx {
                for (b, db) in &dy {
                    let t = &self.table[*a][*b];
                    if t.is_zero() {
                        continue;
                    }
                    let t = if legs == 1 { t.clone() } else { t.embed_leg(legs, leg) };
                    out.add_assign(&da.mul(db).mul(&t));
                }
            }
        }
        Ok(out)
    }
}

/// `{x, y}` in the algebra `spec`.
pub fn p_bracket(spec: &AlgebraSpec, x: &PoissonElem, y: &PoissonElem) -> Result<PoissonElem> {
    BracketTable::new(spec)?.bracket(x, y)
}

/// The bracket on tensor powers; same as [`p_bracket`] on multi-leg elements.
pub fn tensor_bracket(spec: &AlgebraSpec, x: &TensorElem, y: &TensorElem) -> Result<TensorElem> {
    p_bracket(spec, x, y)
}

/// The algebra morphism extending `maps` (one per source leg, all into a
/// `target_legs`-fold tensor power).
pub fn apply_morphism(
    x: &PoissonElem,
    maps: &[LegImages<PoissonElem>],
    target_legs: usize,
) -> Result<PoissonElem> {
    if maps.len() != x.legs() {
        return Err(Error::LegMismatch {
            left: x.legs(),
            right: maps.len(),
        });
    }
    let (n_e, n_ord) = (x.n_e(), x.n_ord());
    let images = all_e_images(maps);
    let mut out = PoissonElem::zero(target_legs, n_e, n_ord);
    for (mono, c) in x.terms() {
        let c = c.substitute(target_legs * n_e, &images);
        let mut acc = PoissonElem::from_coeff(target_legs, n_e, n_ord, c);
        for (leg, map) in maps.iter().enumerate() {
            for (i, img) in map.gens.iter().enumerate() {
                let d = mono[leg * n_ord + i];
                if d > 0 {
                    acc = acc.mul(&img.pow(d));
                }
            }
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

/// Generator images of the coproduct table (two-leg target).
pub fn coproduct_images(spec: &AlgebraSpec) -> Result<LegImages<PoissonElem>> {
    let (n_e, n_ord) = (spec.n_e(), spec.n_ord());
    let mut gens = vec![PoissonElem::zero(2, n_e, n_ord); n_ord];
    let mut e = vec![LinearImage::zero(2 * n_e); n_e];
    for g in 0..spec.n_gens() {
        let value = spec
            .coproduct
            .get(&g)
            .ok_or_else(|| Error::IncompleteTable {
                table: "coproduct".to_string(),
                entry: spec.gen_name(g).to_string(),
            })?
            .as_poisson()?;
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
pub fn identity_images(spec: &AlgebraSpec, legs: usize, leg: usize) -> LegImages<PoissonElem> {
    let (n_e, n_ord) = (spec.n_e(), spec.n_ord());
    LegImages {
        gens: (0..n_ord)
            .map(|o| PoissonElem::ordinary(legs, n_e, n_ord, leg, o))
            .collect(),
        e: identity_e(n_e, legs, leg),
    }
}

/// The counit: every generator to zero.
pub fn counit_images(spec: &AlgebraSpec, legs: usize) -> LegImages<PoissonElem> {
    let (n_e, n_ord) = (spec.n_e(), spec.n_ord());
    LegImages {
        gens: vec![PoissonElem::zero(legs, n_e, n_ord); n_ord],
        e: vec![LinearImage::zero(legs * n_e); n_e],
    }
}

/// Moves images with a `k`-leg target into legs `leg..leg+k` of `legs`.
pub fn shift_images(images: &LegImages<PoissonElem>, n_e: usize, legs: usize, leg: usize) -> LegImages<PoissonElem> {
    LegImages {
        gens: images.gens.iter().map(|g| g.embed_leg(legs, leg)).collect(),
        e: images.e.iter().map(|i| embed_image(i, n_e, legs, leg)).collect(),
    }
}

/// `Delta(x)` for a one-leg element.
pub fn coproduct(spec: &AlgebraSpec, x: &PoissonElem) -> Result<TensorElem> {
    apply_morphism(x, &[coproduct_images(spec)?], 2)
}

/// The z^1 coefficient of `Delta(g)` for generator `g` (declaration index).
pub fn first_order_delta(spec: &AlgebraSpec, g: usize) -> Result<TensorElem> {
    let value = spec
        .coproduct
        .get(&g)
        .ok_or_else(|| Error::IncompleteTable {
            table: "coproduct".to_string(),
            entry: spec.gen_name(g).to_string(),
        })?
        .as_poisson()?;
    value.try_map_coeffs(|c| Ok(CoeffElem::from_poly(&c.z_series_coeff(1)?)))
}

/// The `z -> 0` limit, coefficient-wise.
pub fn p_z0_limit(x: &PoissonElem) -> Result<PoissonElem> {
    x.try_map_coeffs(|c| Ok(CoeffElem::from_poly(&c.limit_z0()?)))
}
