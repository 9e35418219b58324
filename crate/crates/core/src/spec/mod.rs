//! Declarative algebra descriptions, their definition language, and the
//! built-in catalog.
//!
//! A definition file is line oriented. Header lines (`algebra`, `mode`,
//! `order`) come first, followed by sections introduced by a line holding
//! only the section name:
//!
//! ```text
//! algebra su2_standard
//! mode quantum
//! order F12 F21
//!
//! generators
//!   H exp
//!   F12
//!   F21
//! brackets
//!   [F12, F21] = hbar*sinh(2*z*H)/z
//!   ...
//! reorder
//!   F12 : shift
//! coproduct
//!   F12 = exp(z*H) ⊗ F12 + F12 ⊗ exp(-z*H)
//! lie
//!   [H, F12] = F12
//! cobracket
//!   F12 = H ∧ F12
//! casimirs
//!   C = sinh(z*H)^2/z^2 + F12*F21
//! ```
//!
//! See `docs/definition-language.md` for the full grammar.

mod catalog;
mod eval;
mod lexer;
mod parser;
mod render;
mod validate;

pub use catalog::{catalog_entries, catalog_families, catalog_load, catalog_source, CatalogEntry};
pub use eval::parse_element;
pub use validate::{validate_spec, Violation};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poisson::PoissonElem;
use crate::quantum::QuantumElem;
use crate::ring::{CoeffElem, Rational};

/// Quantum (noncommutative, `U_{z,hbar}`) or Poisson (commutative, `Fun(g_z)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Quantum,
    Poisson,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Quantum => "quantum",
            Mode::Poisson => "poisson",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// May appear inside exponentials; lives in the coefficient ring.
    Exponential,
    Ordinary,
}

/// Position of a generator inside the element representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenRef {
    /// Index into the coefficient ring variables.
    E(usize),
    /// Index into the normal order of ordinary generators.
    Ord(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub name: String,
    pub kind: GeneratorKind,
    /// `w` with `[E_i, X] = hbar * w_i * X` (quantum) or `{E_i, X} = w_i * X`
    /// (Poisson), when the bracket table has that form.
    pub weight: Option<Vec<Rational>>,
}

/// Names of the coefficient ring variables and of the ordinary generators
/// (in normal order). Shared by every element of one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub e_names: Vec<String>,
    pub ord_names: Vec<String>,
}

impl Layout {
    /// Placeholder names `E0..`, `X0..`.
    pub fn anonymous(n_e: usize, n_ord: usize) -> Layout {
        Layout {
            e_names: (0..n_e).map(|i| format!("E{}", i)).collect(),
            ord_names: (0..n_ord).map(|i| format!("X{}", i)).collect(),
        }
    }

    pub fn n_e(&self) -> usize {
        self.e_names.len()
    }

    pub fn n_ord(&self) -> usize {
        self.ord_names.len()
    }

    pub fn lookup(&self, name: &str) -> Option<GenRef> {
        if let Some(i) = self.e_names.iter().position(|n| n == name) {
            return Some(GenRef::E(i));
        }
        self.ord_names.iter().position(|n| n == name).map(GenRef::Ord)
    }

    pub fn name(&self, g: GenRef) -> &str {
        match g {
            GenRef::E(i) => &self.e_names[i],
            GenRef::Ord(i) => &self.ord_names[i],
        }
    }
}

/// An element of either mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Poisson(PoissonElem),
    Quantum(QuantumElem),
}

impl Element {
    pub fn legs(&self) -> usize {
        match self {
            Element::Poisson(x) => x.legs(),
            Element::Quantum(x) => x.legs(),
        }
    }

    pub fn render(&self, layout: &Layout) -> String {
        match self {
            Element::Poisson(x) => x.render(layout),
            Element::Quantum(x) => x.render(layout),
        }
    }

    pub fn as_poisson(&self) -> Result<&PoissonElem> {
        match self {
            Element::Poisson(x) => Ok(x),
            Element::Quantum(_) => Err(Error::WrongMode { expected: "poisson" }),
        }
    }

    pub fn as_quantum(&self) -> Result<&QuantumElem> {
        match self {
            Element::Quantum(x) => Ok(x),
            Element::Poisson(_) => Err(Error::WrongMode { expected: "quantum" }),
        }
    }
}

/// One summand `coeff * f^(order) * word` of a differential reorder rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffTerm {
    pub order: u32,
    pub coeff: CoeffElem,
    pub word: Vec<usize>,
}

/// How an ordinary generator `X` moves past a function `f` of the
/// exponential-capable generators (written `X * f = ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReorderRule {
    /// `X * f(E) = f(E + hbar*hbar_shift + const_shift) * X`, derived from
    /// the bracket table.
    Shift {
        hbar_shift: Vec<Rational>,
        const_shift: Vec<Rational>,
    },
    /// `X * f = sum coeff * f^(order) * word`; only for a single
    /// exponential-capable generator.
    Differential(Vec<DiffTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Casimir {
    pub name: String,
    /// Equal expressions of the same element; the first is the primary one.
    pub forms: Vec<Element>,
}

/// A linear bracket `[left, right] = value` of the underlying Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieEntry {
    pub left: usize,
    pub right: usize,
    pub value: PoissonElem,
}

/// Structure constants over the declaration-order generator basis.
///
/// `f[i][j][k]` is the coefficient of `X_k` in `[X_i, X_j]`;
/// `c[i][j][k]` is the coefficient of `X_j ⊗ X_k` in `delta(X_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBialgebraData {
    pub names: Vec<String>,
    pub f: Vec<Vec<Vec<Rational>>>,
    pub c: Vec<Vec<Vec<Rational>>>,
}

/// A parsed algebra description. Immutable after parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub mode: Mode,
    /// Declaration order.
    pub generators: Vec<GeneratorInfo>,
    pub layout: Layout,
    /// Generator positions, parallel to `generators`.
    pub refs: Vec<GenRef>,
    pub brackets: Vec<BracketEntry>,
    /// Keyed by the ordinary generator index.
    pub reorder: BTreeMap<usize, ReorderRule>,
    /// Keyed by declaration index.
    pub coproduct: BTreeMap<usize, Element>,
    pub lie: Vec<LieEntry>,
    /// Keyed by declaration index; two-leg, linear, scalar free.
    pub cobracket: BTreeMap<usize, PoissonElem>,
    pub casimirs: Vec<Casimir>,
}

impl AlgebraSpec {
    /// Parses and checks a definition source. Structural problems are
    /// errors; semantic ones are left to [`validate_spec`].
    pub fn parse(text: &str) -> Result<AlgebraSpec> {
        parser::parse_spec(text)
    }

    pub fn render(&self) -> String {
        render::render_spec(self)
    }

    pub fn n_e(&self) -> usize {
        self.layout.n_e()
    }

    pub fn n_ord(&self) -> usize {
        self.layout.n_ord()
    }

    pub fn n_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    /// Declaration index of a generator position.
    pub fn decl_index(&self, g: GenRef) -> usize {
        self.refs.iter().position(|r| *r == g).expect("generator position")
    }

    /// The stated table entry for an unordered pair, with the sign needed
    /// for the requested orientation; `None` when the pair is absent.
    pub fn bracket_entry(&self, a: usize, b: usize) -> Option<(&Element, bool)> {
        self.brackets.iter().find_map(|e| {
            if e.left == a && e.right == b {
                Some((&e.value, false))
            } else if e.left == b && e.right == a {
                Some((&e.value, true))
            } else {
                None
            }
        })
    }

    /// `[a, b]` (or `{a, b}`) as a Poisson element.
    pub fn poisson_bracket_value(&self, a: usize, b: usize) -> Result<PoissonElem> {
        match self.bracket_entry(a, b) {
            Some((v, neg)) => {
                let v = v.as_poisson()?;
                Ok(if neg { v.neg() } else { v.clone() })
            }
            None if a == b => Ok(PoissonElem::zero(1, self.n_e(), self.n_ord())),
            None => Err(self.missing_pair(a, b)),
        }
    }

    /// `[a, b]` as a quantum element.
    pub fn quantum_bracket_value(&self, a: usize, b: usize) -> Result<QuantumElem> {
        match self.bracket_entry(a, b) {
            Some((v, neg)) => {
                let v = v.as_quantum()?;
                Ok(if neg { v.neg() } else { v.clone() })
            }
            None if a == b => Ok(QuantumElem::zero(1, self.n_e())),
            None => Err(self.missing_pair(a, b)),
        }
    }

    fn missing_pair(&self, a: usize, b: usize) -> Error {
        Error::IncompleteTable {
            table: "bracket".to_string(),
            entry: format!("({}, {})", self.gen_name(a), self.gen_name(b)),
        }
    }

    /// The generator as a one-leg Poisson element.
    pub fn poisson_generator(&self, i: usize) -> PoissonElem {
        match self.refs[i] {
            GenRef::E(e) => PoissonElem::exp_var(1, self.n_e(), self.n_ord(), 0, e),
            GenRef::Ord(o) => PoissonElem::ordinary(1, self.n_e(), self.n_ord(), 0, o),
        }
    }

    /// The generator as a one-leg quantum element.
    pub fn quantum_generator(&self, i: usize) -> QuantumElem {
        match self.refs[i] {
            GenRef::E(e) => QuantumElem::exp_var(1, self.n_e(), 0, e),
            GenRef::Ord(o) => QuantumElem::generator(1, self.n_e(), 0, o),
        }
    }

    pub fn casimir(&self, name: &str) -> Option<&Casimir> {
        self.casimirs.iter().find(|c| c.name == name)
    }

    /// Parses an expression in this algebra's mode and layout.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        eval::parse_element(self, text)
    }

    /// Structure constants from the `lie` and `cobracket` sections.
    pub fn lie_bialgebra_data(&self) -> Result<LieBialgebraData> {
        let n = self.n_gens();
        let zero = || vec![vec![vec![Rational::from_integer(0.into()); n]; n]; n];
        let mut f = zero();
        let mut c = zero();
        for e in &self.lie {
            for (k, q) in self.linear_coords(&e.value)? {
                f[e.left][e.right][k] += &q;
                f[e.right][e.left][k] -= &q;
            }
        }
        for (&i, t) in &self.cobracket {
            for ((j, k), q) in self.bilinear_coords(t)? {
                c[i][j][k] += q;
            }
        }
        Ok(LieBialgebraData {
            names: self.generators.iter().map(|g| g.name.clone()).collect(),
            f,
            c,
        })
    }

    /// Coordinates of a linear, scalar-free one-leg element.
    pub(crate) fn linear_coords(&self, x: &PoissonElem) -> Result<Vec<(usize, Rational)>> {
        let bad = || Error::InvalidSpec(format!("not a linear combination of generators: {}", x.render(&self.layout)));
        let mut out = Vec::new();
        for (m, c) in x.terms() {
            for (k, q) in c.terms() {
                let odeg: u32 = m.iter().sum();
                let edeg: u32 = k.polydeg.iter().sum();
                if k.zpow != 0 || k.hpow != 0 || k.has_exp() || odeg + edeg != 1 {
                    return Err(bad());
                }
                let g = if odeg == 1 {
                    GenRef::Ord(m.iter().position(|&d| d == 1).ok_or_else(bad)?)
                } else {
                    GenRef::E(k.polydeg.iter().position(|&d| d == 1).ok_or_else(bad)?)
                };
                out.push((self.decl_index(g), q.clone()));
            }
        }
        Ok(out)
    }

    /// Coordinates of a bilinear, scalar-free two-leg element.
    pub(crate) fn bilinear_coords(
        &self,
        x: &PoissonElem,
    ) -> Result<Vec<((usize, usize), Rational)>> {
        let bad = || Error::InvalidSpec(format!("not a bilinear tensor of generators: {}", x.render(&self.layout)));
        if x.legs() != 2 {
            return Err(bad());
        }
        let (n_e, n_ord) = (self.n_e(), self.n_ord());
        let mut out = Vec::new();
        for (m, c) in x.terms() {
            for (k, q) in c.terms() {
                if k.zpow != 0 || k.hpow != 0 || k.has_exp() {
                    return Err(bad());
                }
                let mut idx = [0usize; 2];
                for (leg, slot) in idx.iter_mut().enumerate() {
                    let om = &m[leg * n_ord..(leg + 1) * n_ord];
                    let ek = &k.polydeg[leg * n_e..(leg + 1) * n_e];
                    let odeg: u32 = om.iter().sum();
                    let edeg: u32 = ek.iter().sum();
                    if odeg + edeg != 1 {
                        return Err(bad());
                    }
                    let g = if odeg == 1 {
                        GenRef::Ord(om.iter().position(|&d| d == 1).ok_or_else(bad)?)
                    } else {
                        GenRef::E(ek.iter().position(|&d| d == 1).ok_or_else(bad)?)
                    };
                    *slot = self.decl_index(g);
                }
                out.push(((idx[0], idx[1]), q.clone()));
            }
        }
        Ok(out)
    }

    /// The same algebra with `hbar = 1` substituted everywhere (tables,
    /// reorder rules, coproducts, Casimirs). For the catalog algebras this is
    /// the image of the reabsorption map divided by the matching power of
    /// hbar.
    pub fn at_hbar_one(&self) -> AlgebraSpec {
        let map = |e: &Element| match e {
            Element::Poisson(x) => Element::Poisson(x.map_coeffs(CoeffElem::at_hbar_one)),
            Element::Quantum(x) => Element::Quantum(x.map_coeffs(CoeffElem::at_hbar_one)),
        };
        let mut out = self.clone();
        out.name = format!("{}_hbar1", self.name);
        for b in &mut out.brackets {
            b.value = map(&b.value);
        }
        for v in out.coproduct.values_mut() {
            *v = map(v);
        }
        for c in &mut out.casimirs {
            c.forms = c.forms.iter().map(map).collect();
        }
        for r in out.reorder.values_mut() {
            *r = match r {
                ReorderRule::Shift {
                    hbar_shift,
                    const_shift,
                } => ReorderRule::Shift {
                    hbar_shift: vec![Rational::from_integer(0.into()); hbar_shift.len()],
                    const_shift: const_shift
                        .iter()
                        .zip(hbar_shift.iter())
                        .map(|(c, h)| c + h)
                        .collect(),
                },
                ReorderRule::Differential(terms) => ReorderRule::Differential(
                    terms
                        .iter()
                        .map(|t| DiffTerm {
                            order: t.order,
                            coeff: t.coeff.at_hbar_one(),
                            word: t.word.clone(),
                        })
                        .collect(),
                ),
            };
        }
        out
    }
}

#[cfg(test)]
mod tests;
