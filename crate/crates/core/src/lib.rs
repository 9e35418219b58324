//! Exact symbolic engine for two-parameter quantum algebras `U_{z,hbar}(g)`
//! and their q-Poisson-Hopf limits.
//!
//! All arithmetic is exact. Coefficients live in [`ring::CoeffElem`],
//! algebras are described by [`spec::AlgebraSpec`] (parsed from a small
//! definition language), and identities are decided by canonical-form
//! equality in [`poisson`] and [`quantum`].

pub mod bialgebra;
pub mod error;
pub mod morphism;
pub mod poisson;
pub mod quantum;
pub mod ring;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
pub use morphism::LegImages;
pub use poisson::{PoissonElem, TensorElem};
pub use quantum::{Letter, QTensorElem, QuantumElem, Word};
pub use ring::{CoeffElem, LinearImage, PolyElem, Rational, RingKey};
pub use spec::{AlgebraSpec, Element, Layout, Mode};
