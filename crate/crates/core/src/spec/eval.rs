//! Evaluation of expression trees into Poisson or quantum elements.

use num::{BigInt, Signed, ToPrimitive, Zero};

use super::parser::{parse_expr_tokens, Expr};
use super::{AlgebraSpec, Element, GenRef, Layout, Mode};
use crate::error::{Error, Result};
use crate::poisson::PoissonElem;
use crate::quantum::QuantumElem;
use crate::ring::{cosh_linear, sinh_linear, CoeffElem, Rational};

/// The operations the evaluator needs from an element type.
pub(crate) trait AlgValue: Sized + Clone {
    fn from_coeff(layout: &Layout, legs: usize, c: CoeffElem) -> Self;
    fn ordinary(layout: &Layout, idx: usize) -> Self;
    fn legs(&self) -> usize;
    fn as_coeff(&self) -> Option<CoeffElem>;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn tensor(&self, other: &Self) -> Self;
}

impl AlgValue for PoissonElem {
    fn from_coeff(layout: &Layout, legs: usize, c: CoeffElem) -> Self {
        PoissonElem::from_coeff(legs, layout.n_e(), layout.n_ord(), c)
    }

    fn ordinary(layout: &Layout, idx: usize) -> Self {
        PoissonElem::ordinary(1, layout.n_e(), layout.n_ord(), 0, idx)
    }

    fn legs(&self) -> usize {
        PoissonElem::legs(self)
    }

    fn as_coeff(&self) -> Option<CoeffElem> {
        PoissonElem::as_coeff(self)
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        if self.legs() != other.legs() {
            return Err(Error::LegMismatch {
                left: self.legs(),
                right: other.legs(),
            });
        }
        Ok(self.add(other))
    }

    fn neg(&self) -> Self {
        PoissonElem::neg(self)
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.legs() != other.legs() {
            return Err(Error::LegMismatch {
                left: self.legs(),
                right: other.legs(),
            });
        }
        Ok(self.mul(other))
    }

    fn tensor(&self, other: &Self) -> Self {
        PoissonElem::tensor(self, other)
    }
}

impl AlgValue for QuantumElem {
    fn from_coeff(layout: &Layout, legs: usize, c: CoeffElem) -> Self {
        QuantumElem::from_coeff(legs, layout.n_e(), c)
    }

    fn ordinary(layout: &Layout, idx: usize) -> Self {
        QuantumElem::generator(1, layout.n_e(), 0, idx)
    }

    fn legs(&self) -> usize {
        QuantumElem::legs(self)
    }

    fn as_coeff(&self) -> Option<CoeffElem> {
        QuantumElem::as_coeff(self)
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        QuantumElem::try_add(self, other)
    }

    fn neg(&self) -> Self {
        QuantumElem::neg(self)
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        QuantumElem::try_mul(self, other)
    }

    fn tensor(&self, other: &Self) -> Self {
        QuantumElem::tensor(self, other)
    }
}

/// Evaluation environment: the names in scope, and the index of the
/// `f` marker variable when evaluating a reorder rule.
pub(crate) struct Ctx<'a> {
    pub layout: &'a Layout,
    pub marker: Option<usize>,
}

fn rational_of(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Lifts a one-leg scalar to `legs` legs (scalars commute with everything).
fn lift<V: AlgValue>(ctx: &Ctx, x: &V, legs: usize) -> Option<V> {
    if x.legs() == legs {
        return Some(x.clone());
    }
    if x.legs() != 1 {
        return None;
    }
    let c = x.as_coeff()?;
    if !c.is_scalar() {
        return None;
    }
    Some(V::from_coeff(ctx.layout, legs, c.embed(legs * ctx.layout.n_e(), 0)))
}

fn broadcast<V: AlgValue>(ctx: &Ctx, x: &V, y: &V) -> Result<(V, V)> {
    if x.legs() == y.legs() {
        return Ok((x.clone(), y.clone()));
    }
    let legs = x.legs().max(y.legs());
    match (lift(ctx, x, legs), lift(ctx, y, legs)) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::LegMismatch {
            left: x.legs(),
            right: y.legs(),
        }),
    }
}

fn mul<V: AlgValue>(ctx: &Ctx, x: &V, y: &V) -> Result<V> {
    let (a, b) = broadcast(ctx, x, y)?;
    a.try_mul(&b)
}

fn add<V: AlgValue>(ctx: &Ctx, x: &V, y: &V) -> Result<V> {
    let (a, b) = broadcast(ctx, x, y)?;
    a.try_add(&b)
}

fn render_coeff(ctx: &Ctx, c: &CoeffElem) -> String {
    let names: Vec<&str> = ctx.layout.e_names.iter().map(String::as_str).collect();
    c.render(&names)
}

/// Splits `z*(a.E + c*hbar + d)` into `(a, c, d)`.
pub(crate) fn linear_exp_argument(ctx: &Ctx, arg: &CoeffElem) -> Result<(Vec<Rational>, Rational, Rational)> {
    let n = arg.rank();
    let mut a = vec![Rational::zero(); n];
    let mut c = Rational::zero();
    let mut d = Rational::zero();
    let fail = || Error::NonLinearExpArgument(render_coeff(ctx, arg));
    for (k, q) in arg.terms() {
        if k.zpow != 1 || k.has_exp() {
            return Err(fail());
        }
        let deg: u32 = k.polydeg.iter().sum();
        match (deg, k.hpow) {
            (0, 0) => d += q,
            (0, 1) => c += q,
            (1, 0) => {
                let i = k.polydeg.iter().position(|&x| x == 1).ok_or_else(fail)?;
                if Some(i) == ctx.marker {
                    return Err(fail());
                }
                a[i] += q;
            }
            _ => return Err(fail()),
        }
    }
    Ok((a, c, d))
}

pub(crate) fn eval<V: AlgValue>(ctx: &Ctx, e: &Expr) -> Result<V> {
    let rank = ctx.layout.n_e();
    let scalar = |c: CoeffElem| V::from_coeff(ctx.layout, 1, c);
    Ok(match e {
        Expr::Int(n) => scalar(CoeffElem::scalar(rank, rational_of(n))),
        Expr::Ident(name, _) => match name.as_str() {
            "z" => scalar(CoeffElem::z(rank)),
            "hbar" => scalar(CoeffElem::hbar(rank)),
            _ => match ctx.layout.lookup(name) {
                Some(GenRef::E(i)) if Some(i) != ctx.marker => scalar(CoeffElem::var(rank, i)),
                Some(GenRef::Ord(i)) => V::ordinary(ctx.layout, i),
                _ => return Err(Error::UnknownGenerator(name.clone())),
            },
        },
        Expr::Marker(order, pos) => match ctx.marker {
            Some(t) => scalar(CoeffElem::var(rank, t).pow(order + 1)),
            None => return Err(super::lexer::syntax(pos.0, pos.1, "`f` is only allowed in reorder rules")),
        },
        Expr::Neg(x) => eval::<V>(ctx, x)?.neg(),
        Expr::Add(x, y) => add(ctx, &eval::<V>(ctx, x)?, &eval::<V>(ctx, y)?)?,
        Expr::Sub(x, y) => add(ctx, &eval::<V>(ctx, x)?, &eval::<V>(ctx, y)?.neg())?,
        Expr::Mul(x, y) => mul(ctx, &eval::<V>(ctx, x)?, &eval::<V>(ctx, y)?)?,
        Expr::Div(x, y) => {
            let num = eval::<V>(ctx, x)?;
            let den = eval::<V>(ctx, y)?;
            let inv = den
                .as_coeff()
                .filter(|_| den.legs() == 1)
                .and_then(|c| c.inverse())
                .ok_or_else(|| Error::InvalidSpec("division by a non-invertible expression".to_string()))?;
            mul(ctx, &num, &scalar(inv))?
        }
        Expr::Pow(x, n) => {
            let base = eval::<V>(ctx, x)?;
            let (base, n) = if *n < 0 {
                let inv = base
                    .as_coeff()
                    .filter(|_| base.legs() == 1)
                    .and_then(|c| c.inverse())
                    .ok_or_else(|| Error::InvalidSpec("negative power of a non-invertible expression".to_string()))?;
                (scalar(inv), n.unsigned_abs())
            } else {
                (base, *n as u64)
            };
            let mut acc = V::from_coeff(ctx.layout, base.legs(), CoeffElem::one(base.legs() * rank));
            for _ in 0..n {
                acc = mul(ctx, &acc, &base)?;
            }
            acc
        }
        Expr::Tensor(x, y) => eval::<V>(ctx, x)?.tensor(&eval::<V>(ctx, y)?),
        Expr::Wedge(x, y) => {
            let a = eval::<V>(ctx, x)?;
            let b = eval::<V>(ctx, y)?;
            add(ctx, &a.tensor(&b), &b.tensor(&a).neg())?
        }
        Expr::Call(name, args, pos) => eval_call::<V>(ctx, name, args, *pos)?,
    })
}

fn eval_call<V: AlgValue>(ctx: &Ctx, name: &str, args: &[Expr], pos: (usize, usize)) -> Result<V> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(super::lexer::syntax(pos.0, pos.1, format!("`{}` takes {} argument(s)", name, n)))
        }
    };
    match name {
        "exp" | "sinh" | "cosh" => {
            arity(1)?;
            let arg: V = eval(ctx, &args[0])?;
            let c = match arg.as_coeff() {
                Some(c) if arg.legs() == 1 => c,
                _ => {
                    return Err(Error::NonLinearExpArgument(format!(
                        "argument of {} involves non-exponential generators",
                        name
                    )))
                }
            };
            let (a, h, d) = linear_exp_argument(ctx, &c)?;
            let v = match name {
                "exp" => CoeffElem::exp_linear(a, h, d),
                "sinh" => sinh_linear(a, h, d),
                _ => cosh_linear(a, h, d),
            };
            Ok(V::from_coeff(ctx.layout, 1, v))
        }
        "comm" | "anticomm" => {
            arity(2)?;
            let x: V = eval(ctx, &args[0])?;
            let y: V = eval(ctx, &args[1])?;
            let xy = mul(ctx, &x, &y)?;
            let yx = mul(ctx, &y, &x)?;
            if name == "comm" {
                add(ctx, &xy, &yx.neg())
            } else {
                add(ctx, &xy, &yx)
            }
        }
        _ => Err(super::lexer::syntax(pos.0, pos.1, format!("unknown function `{}`", name))),
    }
}

/// Degree in the `f` marker; reorder rules must be linear in `f`.
pub(crate) fn marker_degree(e: &Expr) -> std::result::Result<u32, String> {
    let same = |x: &Expr, y: &Expr| -> std::result::Result<u32, String> {
        let (a, b) = (marker_degree(x)?, marker_degree(y)?);
        if a == b {
            Ok(a)
        } else {
            Err("every summand must contain exactly one f factor".to_string())
        }
    };
    match e {
        Expr::Int(_) | Expr::Ident(..) => Ok(0),
        Expr::Marker(..) => Ok(1),
        Expr::Neg(x) => marker_degree(x),
        Expr::Add(x, y) | Expr::Sub(x, y) => same(x, y),
        Expr::Mul(x, y) => Ok(marker_degree(x)? + marker_degree(y)?),
        Expr::Div(x, y) => {
            if marker_degree(y)? > 0 {
                return Err("f may not appear in a denominator".to_string());
            }
            marker_degree(x)
        }
        Expr::Pow(x, n) => {
            let d = marker_degree(x)?;
            if d > 0 && *n != 1 {
                return Err("f may not be raised to a power".to_string());
            }
            Ok(d)
        }
        Expr::Tensor(..) | Expr::Wedge(..) => Err("tensors are not allowed in reorder rules".to_string()),
        Expr::Call(_, args, _) => {
            for a in args {
                if marker_degree(a)? > 0 {
                    return Err("f may not appear inside a function".to_string());
                }
            }
            Ok(0)
        }
    }
}

/// Evaluates `text` in the algebra's mode.
pub fn parse_element(spec: &AlgebraSpec, text: &str) -> Result<Element> {
    let expr = parse_expr_source(text)?;
    let ctx = Ctx {
        layout: &spec.layout,
        marker: None,
    };
    Ok(match spec.mode {
        Mode::Poisson => Element::Poisson(eval(&ctx, &expr)?),
        Mode::Quantum => Element::Quantum(eval(&ctx, &expr)?),
    })
}

/// Parses a standalone expression (possibly spanning several lines).
pub(crate) fn parse_expr_source(text: &str) -> Result<Expr> {
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        tokens.extend(super::lexer::tokenize(line, i + 1)?);
    }
    parse_expr_tokens(&tokens, false)
}

/// Integer exponent of a `^` operand, if it fits.
pub(crate) fn small_exponent(n: &BigInt) -> Option<i64> {
    if n.abs() > BigInt::from(1_000_000) {
        return None;
    }
    n.to_i64()
}
