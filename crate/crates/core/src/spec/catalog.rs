//! Built-in algebras, embedded as definition sources.

use super::{AlgebraSpec, Mode};
use crate::error::{Error, Result};

/// One catalog source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub mode: Mode,
    pub source: &'static str,
}

const ENTRIES: [CatalogEntry; 6] = [
    CatalogEntry {
        family: "su2_standard",
        mode: Mode::Quantum,
        source: include_str!("../../catalog/su2_standard_quantum.alg"),
    },
    CatalogEntry {
        family: "su2_standard",
        mode: Mode::Poisson,
        source: include_str!("../../catalog/su2_standard_poisson.alg"),
    },
    CatalogEntry {
        family: "su2_nonstandard",
        mode: Mode::Quantum,
        source: include_str!("../../catalog/su2_nonstandard_quantum.alg"),
    },
    CatalogEntry {
        family: "su2_nonstandard",
        mode: Mode::Poisson,
        source: include_str!("../../catalog/su2_nonstandard_poisson.alg"),
    },
    CatalogEntry {
        family: "su3",
        mode: Mode::Quantum,
        source: include_str!("../../catalog/su3_quantum.alg"),
    },
    CatalogEntry {
        family: "su3",
        mode: Mode::Poisson,
        source: include_str!("../../catalog/su3_poisson.alg"),
    },
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

/// Families in catalog order, without duplicates.
pub fn catalog_families() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for e in &ENTRIES {
        if !out.contains(&e.family) {
            out.push(e.family);
        }
    }
    out
}

pub fn catalog_source(family: &str, mode: Mode) -> Result<&'static str> {
    ENTRIES
        .iter()
        .find(|e| e.family == family && e.mode == mode)
        .map(|e| e.source)
        .ok_or_else(|| Error::UnknownCatalogEntry(format!("{} ({})", family, mode)))
}

pub fn catalog_load(family: &str, mode: Mode) -> Result<AlgebraSpec> {
    AlgebraSpec::parse(catalog_source(family, mode)?)
}
