//! Algebra morphisms given by generator images, shared by both engines.

use num::Zero;

use crate::error::{Error, Result};
use crate::ring::{CoeffElem, LinearImage};

/// Images of the generators of one source leg.
///
/// `gens` is indexed by ordinary generator (normal order), `e` by
/// exponential-capable generator; both live in the same target tensor power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegImages<T> {
    pub gens: Vec<T>,
    pub e: Vec<LinearImage>,
}

/// Reads `c` as an affine form `a.E + b*hbar + d`.
pub fn linear_image(c: &CoeffElem, name: &str) -> Result<LinearImage> {
    let mut img = LinearImage::zero(c.rank());
    let fail = || Error::NonLinearEImage(name.to_string());
    for (k, q) in c.terms() {
        if k.zpow != 0 || k.has_exp() {
            return Err(fail());
        }
        let deg: u32 = k.polydeg.iter().sum();
        match (deg, k.hpow) {
            (0, 0) => img.constant += q,
            (0, 1) => img.hbar += q,
            (1, 0) => {
                let i = k.polydeg.iter().position(|&d| d == 1).ok_or_else(fail)?;
                img.coeffs[i] += q;
            }
            _ => return Err(fail()),
        }
    }
    Ok(img)
}

/// `E_i` of a one-leg algebra sent to `E_i` of leg `leg` out of `legs`.
pub(crate) fn identity_e(n_e: usize, legs: usize, leg: usize) -> Vec<LinearImage> {
    (0..n_e)
        .map(|i| LinearImage::var(legs * n_e, leg * n_e + i))
        .collect()
}

/// Shifts the variables of an image to start at leg `leg` of a `legs`-fold target.
pub(crate) fn embed_image(img: &LinearImage, n_e: usize, legs: usize, leg: usize) -> LinearImage {
    let mut coeffs = vec![crate::ring::Rational::zero(); legs * n_e];
    for (j, a) in img.coeffs.iter().enumerate() {
        coeffs[leg * n_e + j] = a.clone();
    }
    LinearImage {
        coeffs,
        hbar: img.hbar.clone(),
        constant: img.constant.clone(),
    }
}

/// Concatenated E images for a coefficient over all source legs.
pub(crate) fn all_e_images<T>(maps: &[LegImages<T>]) -> Vec<LinearImage> {
    maps.iter().flat_map(|m| m.e.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn affine_forms_are_accepted() {
        let c = CoeffElem::var(2, 0)
            .add(&CoeffElem::var(2, 1))
            .add(&CoeffElem::hbar(2).scale(&int(3)));
        let img = linear_image(&c, "H").unwrap();
        assert_eq!(img.coeffs, vec![int(1), int(1)]);
        assert_eq!(img.hbar, int(3));
    }

    #[test]
    fn exponentials_are_rejected() {
        let c = CoeffElem::exp_linear(vec![int(1)], int(0), int(0));
        assert_eq!(linear_image(&c, "H"), Err(Error::NonLinearEImage("H".into())));
    }
}
