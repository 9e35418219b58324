//! Recursive-descent parser for expressions and the section driver.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, One, Zero};

use super::eval::{eval, marker_degree, small_exponent, Ctx};
use super::lexer::{syntax, tokenize, Tok, Token};
use super::{
    AlgebraSpec, BracketEntry, Casimir, DiffTerm, Element, GenRef, GeneratorInfo, GeneratorKind,
    Layout, LieEntry, Mode, ReorderRule,
};
use crate::error::{Error, Result};
use crate::poisson::PoissonElem;
use crate::quantum::{Letter, QuantumElem};
use crate::ring::Rational;

/// Expression tree. Positions are `(line, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(String, (usize, usize)),
    /// `f`, `f'`, `f''`, ... in reorder rules; the payload is the
    /// derivative order.
    Marker(u32, (usize, usize)),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Tensor(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>, (usize, usize)),
}

struct ExprParser<'a> {
    toks: &'a [Token],
    pos: usize,
    markers: bool,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) if self.pos < self.toks.len() => (t.line, t.col),
            Some(t) => (t.line, t.col + 1),
            None => (0, 0),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        syntax(line, col, msg)
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.peek().map(Tok::describe).unwrap_or_else(|| "end of line".into());
            Err(self.error(format!("expected {}, found {}", tok.describe(), found)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Tensor) => {
                    self.pos += 1;
                    lhs = Expr::Tensor(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Wedge) => {
                    self.pos += 1;
                    lhs = Expr::Wedge(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let n = match self.peek() {
            Some(Tok::Int(n)) => small_exponent(n).ok_or_else(|| self.error("exponent too large"))?,
            _ => return Err(self.error("expected an integer exponent")),
        };
        self.pos += 1;
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = vec![self.sum()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.sum()?);
                    }
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Call(name, args, pos));
                }
                if self.markers && name == "f" {
                    let mut order = 0;
                    while self.peek() == Some(&Tok::Prime) {
                        self.pos += 1;
                        order += 1;
                    }
                    return Ok(Expr::Marker(order, pos));
                }
                Ok(Expr::Ident(name, pos))
            }
            Some(t) => Err(self.error(format!("unexpected {}", t.describe()))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

pub(crate) fn parse_expr_tokens(toks: &[Token], markers: bool) -> Result<Expr> {
    let mut p = ExprParser { toks, pos: 0, markers };
    let e = p.sum()?;
    if p.pos != toks.len() {
        return Err(p.error(format!("unexpected {}", toks[p.pos].tok.describe())));
    }
    Ok(e)
}

const SECTIONS: [&str; 7] = [
    "generators",
    "brackets",
    "reorder",
    "coproduct",
    "lie",
    "cobracket",
    "casimirs",
];

/// One logical entry of a section (continuation lines already joined).
struct Entry {
    line: usize,
    toks: Vec<Token>,
}

fn starts_with_operator(toks: &[Token]) -> bool {
    matches!(
        toks.first().map(|t| &t.tok),
        Some(Tok::Plus | Tok::Minus | Tok::Star | Tok::Slash | Tok::Tensor | Tok::Wedge | Tok::Caret)
    )
}

fn open_parens(toks: &[Token]) -> i64 {
    toks.iter()
        .map(|t| match t.tok {
            Tok::LParen => 1,
            Tok::RParen => -1,
            _ => 0,
        })
        .sum()
}

fn ident(t: Option<&Token>, what: &str, line: usize) -> Result<String> {
    match t {
        Some(Token {
            tok: Tok::Ident(s), ..
        }) => Ok(s.clone()),
        Some(t) => Err(syntax(t.line, t.col, format!("expected {}", what))),
        None => Err(syntax(line, 1, format!("expected {}", what))),
    }
}

fn expect_tok(toks: &[Token], i: usize, tok: Tok, line: usize) -> Result<()> {
    match toks.get(i) {
        Some(t) if t.tok == tok => Ok(()),
        Some(t) => Err(syntax(
            t.line,
            t.col,
            format!("expected {}, found {}", tok.describe(), t.tok.describe()),
        )),
        None => Err(syntax(line, 1, format!("expected {}", tok.describe()))),
    }
}

/// `[A, B] = expr` or `{A, B} = expr`.
fn split_pair_entry(e: &Entry) -> Result<(String, String, &[Token])> {
    let close = match e.toks.first().map(|t| &t.tok) {
        Some(Tok::LBrack) => Tok::RBrack,
        Some(Tok::LBrace) => Tok::RBrace,
        _ => {
            let t = &e.toks[0];
            return Err(syntax(t.line, t.col, "expected `[A, B] = ...` or `{A, B} = ...`"));
        }
    };
    let a = ident(e.toks.get(1), "a generator name", e.line)?;
    expect_tok(&e.toks, 2, Tok::Comma, e.line)?;
    let b = ident(e.toks.get(3), "a generator name", e.line)?;
    expect_tok(&e.toks, 4, close, e.line)?;
    expect_tok(&e.toks, 5, Tok::Eq, e.line)?;
    Ok((a, b, &e.toks[6..]))
}

/// `NAME = expr`.
fn split_named_entry(e: &Entry) -> Result<(String, &[Token])> {
    let name = ident(e.toks.first(), "a name", e.line)?;
    expect_tok(&e.toks, 1, Tok::Eq, e.line)?;
    Ok((name, &e.toks[2..]))
}

fn nonempty(toks: &[Token], line: usize) -> Result<()> {
    if toks.is_empty() {
        Err(syntax(line, 1, "missing expression"))
    } else {
        Ok(())
    }
}

fn eval_element(spec_mode: Mode, ctx: &Ctx, toks: &[Token], line: usize) -> Result<Element> {
    nonempty(toks, line)?;
    let expr = parse_expr_tokens(toks, false)?;
    Ok(match spec_mode {
        Mode::Poisson => Element::Poisson(eval(ctx, &expr)?),
        Mode::Quantum => Element::Quantum(eval(ctx, &expr)?),
    })
}

fn eval_poisson(ctx: &Ctx, toks: &[Token], line: usize) -> Result<PoissonElem> {
    nonempty(toks, line)?;
    eval(ctx, &parse_expr_tokens(toks, false)?)
}

pub(crate) fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let mut name: Option<String> = None;
    let mut mode: Option<Mode> = None;
    let mut order: Option<(usize, Vec<String>)> = None;
    let mut sections: BTreeMap<&'static str, Vec<Entry>> = BTreeMap::new();
    let mut current: Option<&'static str> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        if toks.len() == 1 {
            if let Tok::Ident(word) = &toks[0].tok {
                if let Some(s) = SECTIONS.iter().find(|s| *s == word) {
                    if sections.contains_key(s) {
                        return Err(syntax(line, toks[0].col, format!("duplicate section `{}`", s)));
                    }
                    sections.insert(s, Vec::new());
                    current = Some(s);
                    continue;
                }
            }
        }
        if current.is_none() {
            let key = ident(toks.first(), "`algebra`, `mode`, `order` or a section name", line)?;
            match key.as_str() {
                "algebra" => {
                    if toks.len() != 2 {
                        return Err(syntax(line, toks[0].col, "expected `algebra NAME`"));
                    }
                    name = Some(ident(toks.get(1), "an algebra name", line)?);
                }
                "mode" => {
                    let m = ident(toks.get(1), "`quantum` or `poisson`", line)?;
                    mode = Some(match m.as_str() {
                        "quantum" => Mode::Quantum,
                        "poisson" => Mode::Poisson,
                        _ => return Err(syntax(line, toks[1].col, "mode must be `quantum` or `poisson`")),
                    });
                    if toks.len() != 2 {
                        return Err(syntax(line, toks[2].col, "unexpected token after mode"));
                    }
                }
                "order" => {
                    let names = toks[1..]
                        .iter()
                        .map(|t| ident(Some(t), "a generator name", line))
                        .collect::<Result<Vec<_>>>()?;
                    order = Some((line, names));
                }
                _ => {
                    return Err(syntax(
                        line,
                        toks[0].col,
                        format!("unknown header `{}`", key),
                    ))
                }
            }
            continue;
        }
        let entries = sections.get_mut(current.unwrap_or_default()).expect("current section");
        let continues = match entries.last() {
            Some(last) => starts_with_operator(&toks) || open_parens(&last.toks) > 0,
            None => false,
        };
        if continues {
            entries.last_mut().expect("entry").toks.extend(toks);
        } else {
            entries.push(Entry { line, toks });
        }
    }

    let name = name.ok_or_else(|| syntax(1, 1, "missing `algebra NAME` header"))?;
    let mode = mode.ok_or_else(|| syntax(1, 1, "missing `mode quantum|poisson` header"))?;

    // Generators and layout.
    let mut generators: Vec<GeneratorInfo> = Vec::new();
    for e in sections.get("generators").map(Vec::as_slice).unwrap_or(&[]) {
        let gname = ident(e.toks.first(), "a generator name", e.line)?;
        if matches!(gname.as_str(), "z" | "hbar" | "f" | "exp" | "sinh" | "cosh" | "comm" | "anticomm") {
            return Err(syntax(e.line, e.toks[0].col, format!("`{}` is reserved", gname)));
        }
        let kind = match e.toks.get(1).map(|t| &t.tok) {
            None => GeneratorKind::Ordinary,
            Some(Tok::Ident(k)) if k == "exp" && e.toks.len() == 2 => GeneratorKind::Exponential,
            Some(_) => {
                let t = &e.toks[1];
                return Err(syntax(t.line, t.col, "expected `NAME` or `NAME exp`"));
            }
        };
        if generators.iter().any(|g| g.name == gname) {
            return Err(syntax(e.line, e.toks[0].col, format!("duplicate generator `{}`", gname)));
        }
        generators.push(GeneratorInfo {
            name: gname,
            kind,
            weight: None,
        });
    }
    if generators.is_empty() {
        return Err(Error::InvalidSpec("no generators declared".to_string()));
    }
    let e_names: Vec<String> = generators
        .iter()
        .filter(|g| g.kind == GeneratorKind::Exponential)
        .map(|g| g.name.clone())
        .collect();
    let declared_ord: Vec<String> = generators
        .iter()
        .filter(|g| g.kind == GeneratorKind::Ordinary)
        .map(|g| g.name.clone())
        .collect();
    let ord_names = match order {
        None => declared_ord,
        Some((line, names)) => {
            for n in &names {
                if !declared_ord.contains(n) {
                    return Err(if e_names.contains(n) {
                        Error::InvalidSpec(format!("`{}` is exponential-capable and cannot be ordered (line {})", n, line))
                    } else {
                        Error::UnknownGenerator(n.clone())
                    });
                }
            }
            let set: BTreeSet<&String> = names.iter().collect();
            if set.len() != names.len() || names.len() != declared_ord.len() {
                return Err(Error::InvalidSpec(format!(
                    "`order` must list every ordinary generator exactly once (line {})",
                    line
                )));
            }
            names
        }
    };
    let layout = Layout { e_names, ord_names };
    let refs: Vec<GenRef> = generators
        .iter()
        .map(|g| layout.lookup(&g.name).expect("declared generator"))
        .collect();
    let gen_names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
    let index_of = |n: &str| -> Result<usize> {
        gen_names
            .iter()
            .position(|g| g == n)
            .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
    };
    let ctx = Ctx {
        layout: &layout,
        marker: None,
    };

    // Brackets.
    let mut brackets = Vec::new();
    for e in sections.get("brackets").map(Vec::as_slice).unwrap_or(&[]) {
        let (a, b, rhs) = split_pair_entry(e)?;
        let (left, right) = (index_of(&a)?, index_of(&b)?);
        let value = eval_element(mode, &ctx, rhs, e.line)?;
        if value.legs() != 1 {
            return Err(Error::InvalidSpec(format!("bracket [{}, {}] must be a one-leg element", a, b)));
        }
        brackets.push(BracketEntry { left, right, value });
    }
    let n = generators.len();
    for i in 0..n {
        for j in i + 1..n {
            let present = brackets
                .iter()
                .any(|b| (b.left == i && b.right == j) || (b.left == j && b.right == i));
            if !present {
                return Err(Error::IncompleteTable {
                    table: "bracket".to_string(),
                    entry: format!("({}, {})", generators[i].name, generators[j].name),
                });
            }
        }
    }

    let mut spec = AlgebraSpec {
        name,
        mode,
        generators,
        layout: layout.clone(),
        refs,
        brackets,
        reorder: BTreeMap::new(),
        coproduct: BTreeMap::new(),
        lie: Vec::new(),
        cobracket: BTreeMap::new(),
        casimirs: Vec::new(),
    };
    for i in 0..n {
        spec.generators[i].weight = table_weight(&spec, i);
    }

    // Reorder rules.
    if let Some(entries) = sections.get("reorder") {
        if mode == Mode::Poisson && !entries.is_empty() {
            return Err(Error::InvalidSpec("reorder rules only apply to quantum algebras".to_string()));
        }
        for e in entries {
            let gname = ident(e.toks.first(), "a generator name", e.line)?;
            let g = index_of(&gname)?;
            let ord = match spec.refs[g] {
                GenRef::Ord(o) => o,
                GenRef::E(_) => {
                    return Err(Error::InvalidSpec(format!(
                        "reorder rule for exponential-capable generator `{}`",
                        gname
                    )))
                }
            };
            expect_tok(&e.toks, 1, Tok::Colon, e.line)?;
            let rhs = &e.toks[2..];
            nonempty(rhs, e.line)?;
            let rule = if rhs.len() == 1 && rhs[0].tok == Tok::Ident("shift".to_string()) {
                shift_rule(&spec, g)?
            } else {
                differential_rule(&spec, rhs)?
            };
            if spec.reorder.insert(ord, rule).is_some() {
                return Err(syntax(e.line, 1, format!("duplicate reorder rule for `{}`", gname)));
            }
        }
    }

    // Coproduct.
    for e in sections.get("coproduct").map(Vec::as_slice).unwrap_or(&[]) {
        let (gname, rhs) = split_named_entry(e)?;
        let g = index_of(&gname)?;
        let value = eval_element(mode, &ctx, rhs, e.line)?;
        if value.legs() != 2 {
            return Err(Error::InvalidSpec(format!("coproduct of `{}` must be a two-leg tensor", gname)));
        }
        if spec.coproduct.insert(g, value).is_some() {
            return Err(syntax(e.line, 1, format!("duplicate coproduct for `{}`", gname)));
        }
    }
    if !spec.coproduct.is_empty() {
        for i in 0..n {
            if !spec.coproduct.contains_key(&i) {
                return Err(Error::IncompleteTable {
                    table: "coproduct".to_string(),
                    entry: spec.generators[i].name.clone(),
                });
            }
        }
    }

    // Lie bialgebra data.
    for e in sections.get("lie").map(Vec::as_slice).unwrap_or(&[]) {
        let (a, b, rhs) = split_pair_entry(e)?;
        let (left, right) = (index_of(&a)?, index_of(&b)?);
        let value = eval_poisson(&ctx, rhs, e.line)?;
        spec.linear_coords(&value)?;
        spec.lie.push(LieEntry { left, right, value });
    }
    for e in sections.get("cobracket").map(Vec::as_slice).unwrap_or(&[]) {
        let (gname, rhs) = split_named_entry(e)?;
        let g = index_of(&gname)?;
        let value = eval_poisson(&ctx, rhs, e.line)?;
        if !value.is_zero() {
            spec.bilinear_coords(&value)?;
        }
        let value = if value.is_zero() {
            PoissonElem::zero(2, layout.n_e(), layout.n_ord())
        } else {
            value
        };
        if spec.cobracket.insert(g, value).is_some() {
            return Err(syntax(e.line, 1, format!("duplicate cobracket for `{}`", gname)));
        }
    }

    // Casimirs.
    for e in sections.get("casimirs").map(Vec::as_slice).unwrap_or(&[]) {
        let (cname, rhs) = split_named_entry(e)?;
        let value = eval_element(mode, &ctx, rhs, e.line)?;
        if value.legs() != 1 {
            return Err(Error::InvalidSpec(format!("Casimir `{}` must be a one-leg element", cname)));
        }
        match spec.casimirs.iter_mut().find(|c| c.name == cname) {
            Some(c) => c.forms.push(value),
            None => spec.casimirs.push(Casimir {
                name: cname,
                forms: vec![value],
            }),
        }
    }
    Ok(spec)
}

/// `(hbar part, constant part)` of `lambda` in `[E_i, X] = lambda * X`.
fn proportionality(spec: &AlgebraSpec, e: usize, x: usize) -> Option<(Rational, Rational)> {
    let (value, neg) = spec.bracket_entry(e, x)?;
    let sign = if neg { -Rational::one() } else { Rational::one() };
    let (coeff, monomial_ok) = match (value, spec.refs[x]) {
        (Element::Quantum(v), GenRef::Ord(o)) => {
            if v.is_zero() {
                return Some((Rational::zero(), Rational::zero()));
            }
            let mut it = v.terms();
            let (w, c) = it.next()?;
            let ok = it.next().is_none() && w[0] == [Letter::Gen(o as u16)];
            (c.clone(), ok)
        }
        (Element::Poisson(v), GenRef::Ord(o)) => {
            if v.is_zero() {
                return Some((Rational::zero(), Rational::zero()));
            }
            let mut it = v.terms();
            let (m, c) = it.next()?;
            let ok = it.next().is_none() && m.iter().enumerate().all(|(i, &d)| d == u32::from(i == o));
            (c.clone(), ok)
        }
        _ => return None,
    };
    if !monomial_ok {
        return None;
    }
    let mut h = Rational::zero();
    let mut d = Rational::zero();
    for (k, q) in coeff.terms() {
        if k.zpow != 0 || k.has_exp() || !k.is_scalar() {
            return None;
        }
        match k.hpow {
            0 => d += q * &sign,
            1 => h += q * &sign,
            _ => return None,
        }
    }
    Some((h, d))
}

/// Adjoint weight of generator `x` read off the bracket table.
fn table_weight(spec: &AlgebraSpec, x: usize) -> Option<Vec<Rational>> {
    if spec.generators[x].kind == GeneratorKind::Exponential || spec.n_e() == 0 {
        return None;
    }
    let mut w = Vec::new();
    for (i, r) in spec.refs.iter().enumerate() {
        if let GenRef::E(_) = r {
            let (h, d) = proportionality(spec, i, x)?;
            match spec.mode {
                Mode::Quantum if d.is_zero() => w.push(h),
                Mode::Poisson if h.is_zero() => w.push(d),
                _ => return None,
            }
        }
    }
    Some(w)
}

/// `X f(E) = f(E - lambda) X` when `[E_i, X] = lambda_i X`.
fn shift_rule(spec: &AlgebraSpec, x: usize) -> Result<ReorderRule> {
    let mut hbar_shift = vec![Rational::zero(); spec.n_e()];
    let mut const_shift = vec![Rational::zero(); spec.n_e()];
    for (i, r) in spec.refs.iter().enumerate() {
        if let GenRef::E(e) = r {
            let (h, d) = proportionality(spec, i, x).ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "shift rule for `{}` needs [{}, {}] to be a scalar multiple of `{}`",
                    spec.gen_name(x),
                    spec.gen_name(i),
                    spec.gen_name(x),
                    spec.gen_name(x)
                ))
            })?;
            hbar_shift[*e] = -h;
            const_shift[*e] = -d;
        }
    }
    Ok(ReorderRule::Shift {
        hbar_shift,
        const_shift,
    })
}

/// Evaluates `X * f = ...` with `f` realized as an extra ring variable `t`,
/// `f^(j)` as `t^(j+1)`.
fn differential_rule(spec: &AlgebraSpec, rhs: &[Token]) -> Result<ReorderRule> {
    let first = &rhs[0];
    let bad = |msg: String| syntax(first.line, first.col, msg);
    if spec.n_e() != 1 {
        return Err(bad("differential reorder rules need exactly one exponential-capable generator".into()));
    }
    let expr = parse_expr_tokens(rhs, true)?;
    match marker_degree(&expr) {
        Ok(1) => {}
        Ok(_) => return Err(bad("reorder rule must be linear in f".into())),
        Err(m) => return Err(bad(m)),
    }
    let mut marked = spec.layout.clone();
    marked.e_names.push("f".to_string());
    let t = spec.n_e();
    let ctx = Ctx {
        layout: &marked,
        marker: Some(t),
    };
    let value: QuantumElem = eval(&ctx, &expr)?;
    let mut terms: Vec<DiffTerm> = Vec::new();
    for (words, c) in value.terms() {
        let mut word = Vec::new();
        for l in &words[0] {
            match l {
                Letter::Gen(g) => word.push(*g as usize),
                Letter::Fn(_) => {
                    return Err(bad("f and its coefficient must precede the generators in each term".into()))
                }
            }
        }
        for (k, q) in c.terms() {
            let tdeg = k.polydeg[t];
            if tdeg == 0 {
                return Err(bad("every term must contain f".into()));
            }
            let mut key = k.clone();
            key.polydeg[t] = 0;
            let coeff = crate::ring::CoeffElem::from_key(key, q.clone()).restrict(0..t);
            let order = tdeg - 1;
            match terms.iter_mut().find(|d| d.order == order && d.word == word) {
                Some(d) => d.coeff.add_assign(&coeff),
                None => terms.push(DiffTerm { order, coeff, word: word.clone() }),
            }
        }
    }
    terms.retain(|d| !d.coeff.is_zero());
    terms.sort_by(|a, b| (a.order, &a.word).cmp(&(b.order, &b.word)));
    Ok(ReorderRule::Differential(terms))
}
