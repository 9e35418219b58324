//! One routine per check kind. Each expands into independent tasks, one per
//! subject, in a fixed enumeration order.

use std::sync::Arc;

use super::{CheckKind, Job, Options, Outcome, Target, Task};
use crate::bialgebra::{cocycle_check, cojacobi_check, lie_jacobi_check, LinearReport};
use crate::error::{Error, Result};
use crate::poisson::{self, BracketTable, PoissonElem};
use crate::quantum::{self, QuantumElem, Rewriter};
use crate::ring::{int, sinh_linear, CoeffElem, Rational};
use crate::spec::{AlgebraSpec, Element, GenRef, GeneratorKind, Mode};

pub(crate) fn tasks<'a>(kind: CheckKind, target: &'a Target, opts: &Options) -> Vec<Task<'a>> {
    let q = target.quantum.as_ref();
    let p = target.poisson.as_ref();
    let fuel = opts.fuel;
    let mut out = Vec::new();
    match kind {
        CheckKind::LieJacobi | CheckKind::Cojacobi | CheckKind::Cocycle => {
            if let Some(spec) = p.or(q) {
                linear_tasks(kind, spec, &mut out);
            }
        }
        CheckKind::PoissonJacobi => p.into_iter().for_each(|s| poisson_jacobi(s, &mut out)),
        CheckKind::Leibniz => p.into_iter().for_each(|s| leibniz(s, &mut out)),
        CheckKind::HopfHomomorphism => {
            p.into_iter().for_each(|s| poisson_hopf(s, &mut out));
            q.into_iter().for_each(|s| quantum_hopf(s, fuel, &mut out));
        }
        CheckKind::Coassociativity => {
            p.into_iter().for_each(|s| poisson_coassoc(s, &mut out));
            q.into_iter().for_each(|s| quantum_coassoc(s, fuel, &mut out));
        }
        CheckKind::Counit => {
            p.into_iter().for_each(|s| poisson_counit(s, &mut out));
            q.into_iter().for_each(|s| quantum_counit(s, fuel, &mut out));
        }
        CheckKind::CasimirCentrality => p.into_iter().for_each(|s| poisson_casimir(s, &mut out)),
        CheckKind::FirstOrderDelta => p.into_iter().for_each(|s| first_order(s, &mut out)),
        CheckKind::QuantumJacobi => q.into_iter().for_each(|s| quantum_jacobi(s, fuel, &mut out)),
        CheckKind::QuantumCasimir => q.into_iter().for_each(|s| quantum_casimir(s, fuel, &mut out)),
        CheckKind::CasimirFormsEqual => {
            p.into_iter().for_each(|s| forms_equal(s, fuel, &mut out));
            q.into_iter().for_each(|s| forms_equal(s, fuel, &mut out));
        }
        CheckKind::HbarLimitBrackets => {
            if let (Some(q), Some(p)) = (q, p) {
                hbar_brackets(q, p, fuel, &mut out);
            }
        }
        CheckKind::HbarLimitCoproduct => {
            if let (Some(q), Some(p)) = (q, p) {
                hbar_coproduct(q, p, fuel, &mut out);
            }
        }
        CheckKind::HbarLimitCasimir => {
            if let (Some(q), Some(p)) = (q, p) {
                hbar_casimir(q, p, fuel, &mut out);
            }
        }
        CheckKind::Z0Limit => {
            p.into_iter().for_each(|s| z0_limit(s, fuel, &mut out));
            q.into_iter().for_each(|s| z0_limit(s, fuel, &mut out));
        }
        CheckKind::Serre => p.into_iter().for_each(|s| poisson_serre(s, &mut out)),
        CheckKind::QuantumSerre => q.into_iter().for_each(|s| quantum_serre(s, fuel, &mut out)),
        CheckKind::Reabsorption => q.into_iter().for_each(|s| reabsorption(s, fuel, &mut out)),
        CheckKind::LimitNoncommutation => q.into_iter().for_each(|s| noncommutation(s, fuel, &mut out)),
        CheckKind::ConfluenceProbe => {
            q.into_iter().for_each(|s| confluence(s, fuel, opts.probe_seeds, &mut out))
        }
    }
    out
}

fn label(spec: &AlgebraSpec) -> String {
    format!("{}_{}", spec.name, spec.mode)
}

fn push<'a>(out: &mut Vec<Task<'a>>, kind: CheckKind, spec: &AlgebraSpec, subject: String, job: Job<'a>) {
    out.push(Task {
        kind,
        algebra: label(spec),
        subject,
        heavy: false,
        job,
    });
}

fn failed(e: &Error) -> Outcome {
    Outcome::Fail(format!("error: {}", e))
}

fn p_zero(spec: &AlgebraSpec, r: Result<PoissonElem>) -> Outcome {
    match r {
        Ok(x) if x.is_zero() => Outcome::Pass,
        Ok(x) => Outcome::Fail(x.render(&spec.layout)),
        Err(e) => failed(&e),
    }
}

fn q_zero(spec: &AlgebraSpec, r: Result<QuantumElem>) -> Outcome {
    match r {
        Ok(x) if x.is_zero() => Outcome::Pass,
        Ok(x) => Outcome::Fail(x.render(&spec.layout)),
        Err(e) => failed(&e),
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

fn names(spec: &AlgebraSpec, idx: &[usize]) -> String {
    let parts: Vec<&str> = idx.iter().map(|&i| spec.gen_name(i)).collect();
    format!("({})", parts.join(", "))
}

fn table_of(spec: &AlgebraSpec) -> std::result::Result<Arc<BracketTable<'_>>, Error> {
    BracketTable::new(spec).map(Arc::new)
}

fn coproduct_entry(spec: &AlgebraSpec, g: usize) -> Result<&Element> {
    spec.coproduct.get(&g).ok_or_else(|| Error::IncompleteTable {
        table: "coproduct".to_string(),
        entry: spec.gen_name(g).to_string(),
    })
}

/// `[X_a, X_b]` of the underlying Lie algebra as a one-leg Poisson element.
fn lie_value(spec: &AlgebraSpec, a: usize, b: usize) -> PoissonElem {
    for e in &spec.lie {
        if (e.left, e.right) == (a, b) {
            return e.value.clone();
        }
        if (e.left, e.right) == (b, a) {
            return e.value.neg();
        }
    }
    PoissonElem::zero(1, spec.n_e(), spec.n_ord())
}

// ---- linear structure constants

fn linear_tasks<'a>(kind: CheckKind, spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    let data = match spec.lie_bialgebra_data() {
        Ok(d) => d,
        Err(e) => {
            let msg = failed(&e);
            push(out, kind, spec, "structure constants".into(), Box::new(move || msg.clone()));
            return;
        }
    };
    let report: LinearReport = match kind {
        CheckKind::LieJacobi => lie_jacobi_check(&data),
        CheckKind::Cojacobi => cojacobi_check(&data),
        _ => cocycle_check(&data),
    };
    let n = spec.n_gens();
    let subjects: Vec<Vec<usize>> = match kind {
        CheckKind::Cocycle => pairs(n).map(|(i, j)| vec![i, j]).collect(),
        _ => triples(n).map(|(i, j, k)| vec![i, j, k]).collect(),
    };
    for s in subjects {
        let subject_names: Vec<String> = s.iter().map(|&i| spec.gen_name(i).to_string()).collect();
        let outcome = report
            .violations
            .iter()
            .find(|v| v.subject == subject_names)
            .map(|v| Outcome::Fail(v.residual.clone()))
            .unwrap_or(Outcome::Pass);
        push(out, kind, spec, names(spec, &s), Box::new(move || outcome.clone()));
    }
}

// ---- Poisson checks

fn poisson_jacobi<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    let table = match table_of(spec) {
        Ok(t) => t,
        Err(e) => return push(out, CheckKind::PoissonJacobi, spec, "table".into(), Box::new(move || failed(&e))),
    };
    for (a, b, c) in triples(spec.n_gens()) {
        let t = table.clone();
        let job = move || {
            let g = |i| spec.poisson_generator(i);
            let br = |x: &PoissonElem, y: &PoissonElem| t.bracket(x, y);
            let r = (|| {
                let s1 = br(&g(a), &br(&g(b), &g(c))?)?;
                let s2 = br(&g(b), &br(&g(c), &g(a))?)?;
                let s3 = br(&g(c), &br(&g(a), &g(b))?)?;
                Ok(s1.add(&s2).add(&s3))
            })();
            p_zero(spec, r)
        };
        push(out, CheckKind::PoissonJacobi, spec, names(spec, &[a, b, c]), Box::new(job));
    }
}

/// Generators plus `exp(z*E_i)` for every exponential-capable generator.
fn leibniz_atoms(spec: &AlgebraSpec) -> Vec<(String, PoissonElem)> {
    let (n_e, n_ord) = (spec.n_e(), spec.n_ord());
    let mut atoms: Vec<(String, PoissonElem)> = (0..spec.n_gens())
        .map(|g| (spec.gen_name(g).to_string(), spec.poisson_generator(g)))
        .collect();
    for i in 0..n_e {
        let mut a = vec![int(0); n_e];
        a[i] = int(1);
        let c = CoeffElem::exp_linear(a, int(0), int(0));
        atoms.push((format!("exp(z*{})", spec.layout.e_names[i]), PoissonElem::from_coeff(1, n_e, n_ord, c)));
    }
    atoms
}

fn leibniz<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    let table = match table_of(spec) {
        Ok(t) => t,
        Err(e) => return push(out, CheckKind::Leibniz, spec, "table".into(), Box::new(move || failed(&e))),
    };
    let atoms = Arc::new(leibniz_atoms(spec));
    for x in 0..spec.n_gens() {
        for y in 0..atoms.len() {
            for w in y..atoms.len() {
                let (t, atoms_ref) = (table.clone(), atoms.clone());
                let subject = format!("({}, {}*{})", spec.gen_name(x), atoms[y].0, atoms[w].0);
                let job = move || {
                    let gx = spec.poisson_generator(x);
                    let (ay, aw) = (&atoms_ref[y].1, &atoms_ref[w].1);
                    let r = (|| {
                        let lhs = t.bracket(&gx, &ay.mul(aw))?;
                        let rhs = t.bracket(&gx, ay)?.mul(aw).add(&ay.mul(&t.bracket(&gx, aw)?));
                        Ok(lhs.sub(&rhs))
                    })();
                    p_zero(spec, r)
                };
                push(out, CheckKind::Leibniz, spec, subject, Box::new(job));
            }
        }
    }
}

fn poisson_hopf<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    let table = match table_of(spec) {
        Ok(t) => t,
        Err(e) => return push(out, CheckKind::HopfHomomorphism, spec, "table".into(), Box::new(move || failed(&e))),
    };
    for (a, b) in pairs(spec.n_gens()) {
        let t = table.clone();
        let job = move || {
            let r = (|| {
                let (x, y) = (spec.poisson_generator(a), spec.poisson_generator(b));
                let lhs = poisson::coproduct(spec, &t.bracket(&x, &y)?)?;
                let rhs = t.bracket(&poisson::coproduct(spec, &x)?, &poisson::coproduct(spec, &y)?)?;
                Ok(lhs.sub(&rhs))
            })();
            p_zero(spec, r)
        };
        push(out, CheckKind::HopfHomomorphism, spec, names(spec, &[a, b]), Box::new(job));
    }
}

fn poisson_coassoc<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    for g in 0..spec.n_gens() {
        let job = move || {
            let r = (|| {
                let n_e = spec.n_e();
                let d = poisson::coproduct_images(spec)?;
                let x = coproduct_entry(spec, g)?.as_poisson()?;
                let left = [poisson::shift_images(&d, n_e, 3, 0), poisson::identity_images(spec, 3, 2)];
                let right = [poisson::identity_images(spec, 3, 0), poisson::shift_images(&d, n_e, 3, 1)];
                Ok(poisson::apply_morphism(x, &left, 3)?.sub(&poisson::apply_morphism(x, &right, 3)?))
            })();
            p_zero(spec, r)
        };
        push(out, CheckKind::Coassociativity, spec, spec.gen_name(g).to_string(), Box::new(job));
    }
}

fn poisson_counit<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    for g in 0..spec.n_gens() {
        let job = move || {
            let r = (|| {
                let n_e = spec.n_e();
                let x = coproduct_entry(spec, g)?.as_poisson()?;
                let eps = poisson::shift_images(&poisson::counit_images(spec, 1), n_e, 1, 0);
                let id = poisson::identity_images(spec, 1, 0);
                let gen = spec.poisson_generator(g);
                let l = poisson::apply_morphism(x, &[eps.clone(), id.clone()], 1)?.sub(&gen);
                let r = poisson::apply_morphism(x, &[id, eps], 1)?.sub(&gen);
                Ok(if l.is_zero() { r } else { l })
            })();
            p_zero(spec, r)
        };
        push(out, CheckKind::Counit, spec, spec.gen_name(g).to_string(), Box::new(job));
    }
}

fn poisson_casimir<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    let table = match table_of(spec) {
        Ok(t) => t,
        Err(e) => return push(out, CheckKind::CasimirCentrality, spec, "table".into(), Box::new(move || failed(&e))),
    };
    for c in &spec.casimirs {
        for (k, form) in c.forms.iter().enumerate() {
            for g in 0..spec.n_gens() {
                let t = table.clone();
                let subject = casimir_subject(&c.name, k, c.forms.len(), Some(spec.gen_name(g)));
                let job = move || {
                    let r = form.as_poisson().and_then(|f| t.bracket(f, &spec.poisson_generator(g)));
                    p_zero(spec, r)
                };
                push(out, CheckKind::CasimirCentrality, spec, subject, Box::new(job));
            }
        }
    }
}

fn casimir_subject(name: &str, k: usize, forms: usize, with: Option<&str>) -> String {
    let base = if forms > 1 { format!("{}[{}]", name, k) } else { name.to_string() };
    match with {
        Some(g) => format!("({}, {})", base, g),
        None => base,
    }
}

fn first_order<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    for g in 0..spec.n_gens() {
        let job = move || {
            let r = poisson::first_order_delta(spec, g).map(|d| {
                let expected = spec
                    .cobracket
                    .get(&g)
                    .cloned()
                    .unwrap_or_else(|| PoissonElem::zero(2, spec.n_e(), spec.n_ord()));
                d.sub(&expected)
            });
            p_zero(spec, r)
        };
        push(out, CheckKind::FirstOrderDelta, spec, spec.gen_name(g).to_string(), Box::new(job));
    }
}

// ---- quantum checks

fn quantum_jacobi<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for (a, b, c) in triples(spec.n_gens()) {
        let job = move || {
            let r = (|| {
                let mut rw = Rewriter::new(spec)?;
                let g = |i| spec.quantum_generator(i);
                let mut cyc = |x: usize, y: usize, w: usize| -> Result<QuantumElem> {
                    let inner = rw.commutator(&g(y), &g(w), fuel)?;
                    rw.commutator(&g(x), &inner, fuel)
                };
                let s = cyc(a, b, c)?.add(&cyc(b, c, a)?).add(&cyc(c, a, b)?);
                Ok(s)
            })();
            q_zero(spec, r)
        };
        push(out, CheckKind::QuantumJacobi, spec, names(spec, &[a, b, c]), Box::new(job));
    }
}

fn quantum_casimir<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for c in &spec.casimirs {
        for (k, form) in c.forms.iter().enumerate() {
            for g in 0..spec.n_gens() {
                let subject = casimir_subject(&c.name, k, c.forms.len(), Some(spec.gen_name(g)));
                let job = move || {
                    let r = form
                        .as_quantum()
                        .and_then(|f| quantum::q_commutator(spec, f, &spec.quantum_generator(g), fuel));
                    q_zero(spec, r)
                };
                push(out, CheckKind::QuantumCasimir, spec, subject, Box::new(job));
            }
        }
    }
}

fn forms_equal<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for c in &spec.casimirs {
        for k in 1..c.forms.len() {
            let (first, other) = (&c.forms[0], &c.forms[k]);
            let subject = format!("{}[{}] = {}[0]", c.name, k, c.name);
            let job = move || match spec.mode {
                Mode::Poisson => {
                    let r = (|| Ok(other.as_poisson()?.sub(first.as_poisson()?)))();
                    p_zero(spec, r)
                }
                Mode::Quantum => {
                    let r = (|| {
                        let d = other.as_quantum()?.sub(first.as_quantum()?);
                        quantum::normal_order(spec, &d, fuel)
                    })();
                    q_zero(spec, r)
                }
            };
            push(out, CheckKind::CasimirFormsEqual, spec, subject, Box::new(job));
        }
    }
}

fn quantum_coproduct_images(spec: &AlgebraSpec) -> Result<crate::morphism::LegImages<QuantumElem>> {
    quantum::coproduct_images(spec)
}

fn quantum_hopf<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    let heavy = spec.n_gens() > 3;
    for (a, b) in pairs(spec.n_gens()) {
        let job = move || {
            let r = (|| {
                let value = spec.quantum_bracket_value(a, b)?;
                let lhs = quantum::coproduct(spec, &value, fuel)?;
                let (x, y) = (spec.quantum_generator(a), spec.quantum_generator(b));
                let dx = quantum::coproduct(spec, &x, fuel)?;
                let dy = quantum::coproduct(spec, &y, fuel)?;
                let rhs = quantum::q_commutator(spec, &dx, &dy, fuel)?;
                Ok(lhs.sub(&rhs))
            })();
            q_zero(spec, r)
        };
        out.push(Task {
            kind: CheckKind::HopfHomomorphism,
            algebra: label(spec),
            subject: names(spec, &[a, b]),
            heavy,
            job: Box::new(job),
        });
    }
}

fn quantum_coassoc<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for g in 0..spec.n_gens() {
        let job = move || {
            let r = (|| {
                let n_e = spec.n_e();
                let d = quantum_coproduct_images(spec)?;
                let x = coproduct_entry(spec, g)?.as_quantum()?;
                let left = [quantum::shift_images(&d, n_e, 3, 0), quantum::identity_images(spec, 3, 2)];
                let right = [quantum::identity_images(spec, 3, 0), quantum::shift_images(&d, n_e, 3, 1)];
                let diff = quantum::apply_morphism(x, &left, 3)?.sub(&quantum::apply_morphism(x, &right, 3)?);
                quantum::normal_order(spec, &diff, fuel)
            })();
            q_zero(spec, r)
        };
        push(out, CheckKind::Coassociativity, spec, spec.gen_name(g).to_string(), Box::new(job));
    }
}

fn quantum_counit<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for g in 0..spec.n_gens() {
        let job = move || {
            let r = (|| {
                let n_e = spec.n_e();
                let x = coproduct_entry(spec, g)?.as_quantum()?;
                let eps = quantum::shift_images(&quantum::counit_images(spec, 1), n_e, 1, 0);
                let id = quantum::identity_images(spec, 1, 0);
                let gen = spec.quantum_generator(g);
                let l = quantum::normal_order(spec, &quantum::apply_morphism(x, &[eps.clone(), id.clone()], 1)?.sub(&gen), fuel)?;
                let r = quantum::normal_order(spec, &quantum::apply_morphism(x, &[id, eps], 1)?.sub(&gen), fuel)?;
                Ok(if l.is_zero() { r } else { l })
            })();
            q_zero(spec, r)
        };
        push(out, CheckKind::Counit, spec, spec.gen_name(g).to_string(), Box::new(job));
    }
}

// ---- limits

fn hbar_brackets<'a>(q: &'a AlgebraSpec, p: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for (a, b) in pairs(q.n_gens()) {
        let job = move || {
            let r = (|| {
                let lim = quantum::hbar_limit_bracket(q, p, &q.quantum_generator(a), &q.quantum_generator(b), fuel)?;
                Ok(lim.sub(&p.poisson_bracket_value(a, b)?))
            })();
            p_zero(p, r)
        };
        push(out, CheckKind::HbarLimitBrackets, q, names(q, &[a, b]), Box::new(job));
    }
}

fn hbar_coproduct<'a>(q: &'a AlgebraSpec, p: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for g in 0..q.n_gens() {
        let job = move || {
            let r = (|| {
                let lim = quantum::hbar_limit_coproduct(q, p, g, fuel)?;
                Ok(lim.sub(coproduct_entry(p, g)?.as_poisson()?))
            })();
            p_zero(p, r)
        };
        push(out, CheckKind::HbarLimitCoproduct, q, q.gen_name(g).to_string(), Box::new(job));
    }
}

fn hbar_casimir<'a>(q: &'a AlgebraSpec, p: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for c in &q.casimirs {
        let target = p.casimir(&c.name);
        for (k, form) in c.forms.iter().enumerate() {
            let subject = casimir_subject(&c.name, k, c.forms.len(), None);
            let name = c.name.clone();
            let job = move || {
                let Some(target) = target else {
                    return Outcome::Fail(format!("no Poisson Casimir named `{}`", name));
                };
                let r = (|| {
                    let lim = quantum::hbar_limit(q, p, form.as_quantum()?, fuel)?;
                    Ok(lim.sub(target.forms[0].as_poisson()?))
                })();
                p_zero(p, r)
            };
            push(out, CheckKind::HbarLimitCasimir, q, subject, Box::new(job));
        }
    }
}

/// `z -> 0` on the coefficients of a quantum element.
fn q_z0(x: &QuantumElem) -> Result<QuantumElem> {
    x.try_map_coeffs(|c| Ok(CoeffElem::from_poly(&c.limit_z0()?)))
}

fn primitive_p(spec: &AlgebraSpec, g: usize) -> PoissonElem {
    let x = spec.poisson_generator(g);
    x.embed_leg(2, 0).add(&x.embed_leg(2, 1))
}

fn primitive_q(spec: &AlgebraSpec, g: usize) -> QuantumElem {
    let x = spec.quantum_generator(g);
    x.embed_leg(2, 0).add(&x.embed_leg(2, 1))
}

fn z0_limit<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    let n = spec.n_gens();
    for (a, b) in pairs(n) {
        let job = move || match spec.mode {
            Mode::Poisson => {
                let r = (|| Ok(poisson::p_z0_limit(&spec.poisson_bracket_value(a, b)?)?.sub(&lie_value(spec, a, b))))();
                p_zero(spec, r)
            }
            Mode::Quantum => {
                let r = (|| {
                    let lim = q_z0(&quantum::normal_order(spec, &spec.quantum_bracket_value(a, b)?, fuel)?)?;
                    let lim = quantum::commutative_image(spec, &lim)?;
                    Ok(lim.sub(&lie_value(spec, a, b).mul_coeff(&CoeffElem::hbar(spec.n_e()))))
                })();
                p_zero(spec, r)
            }
        };
        push(out, CheckKind::Z0Limit, spec, format!("bracket {}", names(spec, &[a, b])), Box::new(job));
    }
    for g in 0..n {
        let job = move || match spec.mode {
            Mode::Poisson => {
                let r = (|| Ok(poisson::p_z0_limit(coproduct_entry(spec, g)?.as_poisson()?)?.sub(&primitive_p(spec, g))))();
                p_zero(spec, r)
            }
            Mode::Quantum => {
                let r = (|| {
                    let d = quantum::normal_order(spec, coproduct_entry(spec, g)?.as_quantum()?, fuel)?;
                    Ok(q_z0(&d)?.sub(&primitive_q(spec, g)))
                })();
                q_zero(spec, r)
            }
        };
        push(out, CheckKind::Z0Limit, spec, format!("coproduct {}", spec.gen_name(g)), Box::new(job));
    }
}

// ---- Serre relations

/// Pairs `(i, j)` of distinct simple roots of the same sign, with whether
/// `w_i + w_j` is a root. Roots are the weights of the ordinary generators.
pub(crate) fn simple_root_pairs(spec: &AlgebraSpec) -> Vec<(usize, usize, bool)> {
    let roots: Vec<(usize, Vec<Rational>)> = (0..spec.n_gens())
        .filter(|&g| spec.generators[g].kind == GeneratorKind::Ordinary)
        .filter_map(|g| spec.generators[g].weight.clone().map(|w| (g, w)))
        .filter(|(_, w)| w.iter().any(|x| *x != int(0)))
        .collect();
    let sign = |w: &[Rational]| w.iter().find(|x| **x != int(0)).map(|x| *x > int(0)).unwrap_or(false);
    let sum = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let is_root = |w: &[Rational]| roots.iter().any(|(_, r)| r.as_slice() == w);
    let simple: Vec<&(usize, Vec<Rational>)> = roots
        .iter()
        .filter(|(_, w)| {
            !roots.iter().any(|(_, a)| {
                sign(a) == sign(w) && roots.iter().any(|(_, b)| sign(b) == sign(w) && sum(a, b) == *w)
            })
        })
        .collect();
    let mut out = Vec::new();
    for (i, wi) in &simple {
        for (j, wj) in &simple {
            if i != j && sign(wi) == sign(wj) {
                out.push((*i, *j, is_root(&sum(wi, wj))));
            }
        }
    }
    out
}

fn poisson_serre<'a>(spec: &'a AlgebraSpec, out: &mut Vec<Task<'a>>) {
    let table = match table_of(spec) {
        Ok(t) => t,
        Err(e) => return push(out, CheckKind::Serre, spec, "table".into(), Box::new(move || failed(&e))),
    };
    for (i, j, adjacent) in simple_root_pairs(spec) {
        let t = table.clone();
        let job = move || {
            let r = (|| {
                let (xi, xj) = (spec.poisson_generator(i), spec.poisson_generator(j));
                if !adjacent {
                    return t.bracket(&xi, &xj);
                }
                let lhs = t.bracket(&xi, &t.bracket(&xi, &xj)?)?;
                let rhs = xi.mul(&xi).mul(&xj).mul_coeff(&CoeffElem::z_pow(spec.n_e(), 2));
                Ok(lhs.sub(&rhs))
            })();
            p_zero(spec, r)
        };
        push(out, CheckKind::Serre, spec, names(spec, &[i, j]), Box::new(job));
    }
}

fn quantum_serre<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    for (i, j, adjacent) in simple_root_pairs(spec) {
        let job = move || {
            let r = (|| {
                let mut rw = Rewriter::new(spec)?;
                let (xi, xj) = (spec.quantum_generator(i), spec.quantum_generator(j));
                if !adjacent {
                    return rw.commutator(&xi, &xj, fuel);
                }
                let inner = rw.commutator(&xi, &xj, fuel)?;
                let lhs = rw.commutator(&xi, &inner, fuel)?;
                // 4 sinh^2(z hbar / 2)
                let s = sinh_linear(vec![int(0); spec.n_e()], Rational::new(1.into(), 2.into()), int(0));
                let k = s.mul(&s).scale(&int(4));
                let rhs = rw.normalize(&xi.mul(&xj).mul(&xi).mul_coeff(&k), fuel)?;
                Ok(lhs.sub(&rhs))
            })();
            q_zero(spec, r)
        };
        push(out, CheckKind::QuantumSerre, spec, names(spec, &[i, j]), Box::new(job));
    }
}

// ---- reabsorption

fn reabsorption<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    let one = Arc::new(spec.at_hbar_one());
    let n = spec.n_gens();
    for (a, b) in pairs(n) {
        let one = one.clone();
        let job = move || {
            let r = (|| {
                let v = quantum::rescale_map(&spec.quantum_bracket_value(a, b)?)?
                    .map_coeffs(|c| c.mul_hbar_pow(-2));
                let expected = one.quantum_bracket_value(a, b)?;
                quantum::normal_order(&one, &v.sub(&expected), fuel)
            })();
            q_zero(spec, r)
        };
        push(out, CheckKind::Reabsorption, spec, format!("bracket {}", names(spec, &[a, b])), Box::new(job));
    }
    for g in 0..n {
        let one = one.clone();
        let job = move || {
            let r = (|| {
                let v = quantum::rescale_map(coproduct_entry(spec, g)?.as_quantum()?)?
                    .map_coeffs(|c| c.mul_hbar_pow(-1));
                let expected = coproduct_entry(&one, g)?.as_quantum()?;
                quantum::normal_order(&one, &v.sub(expected), fuel)
            })();
            q_zero(spec, r)
        };
        push(out, CheckKind::Reabsorption, spec, format!("coproduct {}", spec.gen_name(g)), Box::new(job));
    }
}

/// After reabsorption the bracket has no hbar -> 0 limit: every nonzero
/// relation must raise `NegativeHbarValuation`.
fn noncommutation<'a>(spec: &'a AlgebraSpec, fuel: u64, out: &mut Vec<Task<'a>>) {
    let one = Arc::new(spec.at_hbar_one());
    for (a, b) in pairs(spec.n_gens()) {
        if spec.quantum_bracket_value(a, b).map(|v| v.is_zero()).unwrap_or(false) {
            continue;
        }
        let one = one.clone();
        let job = move || {
            let (x, y) = (one.quantum_generator(a), one.quantum_generator(b));
            match quantum::hbar_limit_bracket(&one, &one, &x, &y, fuel) {
                Err(Error::NegativeHbarValuation { .. }) => Outcome::Pass,
                Err(e) => failed(&e),
                Ok(v) => Outcome::Fail(format!("limit exists: {}", v.render(&spec.layout))),
            }
        };
        push(out, CheckKind::LimitNoncommutation, spec, names(spec, &[a, b]), Box::new(job));
    }
}

// ---- confluence

fn confluence<'a>(spec: &'a AlgebraSpec, fuel: u64, seeds: u64, out: &mut Vec<Task<'a>>) {
    let letters: Vec<usize> = (0..spec.n_gens())
        .filter(|&g| matches!(spec.refs[g], GenRef::Ord(_)))
        .collect();
    for &a in &letters {
        for &b in &letters {
            for &c in &letters {
                let subject = format!("{}*{}*{}", spec.gen_name(a), spec.gen_name(b), spec.gen_name(c));
                let job = move || {
                    let x = spec
                        .quantum_generator(a)
                        .mul(&spec.quantum_generator(b))
                        .mul(&spec.quantum_generator(c));
                    for seed in 0..seeds {
                        match quantum::confluence_probe(spec, &x, fuel, seed) {
                            Ok(o) if o.agrees() => {}
                            Ok(o) => {
                                let diff = o.deterministic.sub(&o.randomized);
                                return Outcome::Warning(format!("seed {}: {}", seed, diff.render(&spec.layout)));
                            }
                            Err(e) => return failed(&e),
                        }
                    }
                    Outcome::Pass
                };
                push(out, CheckKind::ConfluenceProbe, spec, subject, Box::new(job));
            }
        }
    }
}
