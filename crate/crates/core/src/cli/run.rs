//! Evaluates a parsed spec file and renders the report.

use std::sync::Arc;

use super::parser::{
    AtomKey, AtomWeight, Command, CommandKind, Expr, FnAtom, FnExpr, MeasureExpr, Op, SpecDocument,
    Target,
};
use super::CliError;
use crate::error::Error;
use crate::integration::{
    ae_equal, fubini_check, integrate, is_integrable, signed_integral, tensor_functional,
    SimpleFunction, Verdict,
};
use crate::measures::{
    sigma_finite_component, Atomic, Generator, Ground, Measure, MeasureSpec, Tabulated, WeightRule,
};
use crate::product::{product3, ProductMeasure};
use crate::sets::{
    FinSet, FinUniverse, Interval, Progression, RealSet, RectUnion, Set, SetOps, TripleRectUnion,
};
use crate::sigma_engine::{size_limit, SigmaRingFin};

type Lines = Vec<(&'static str, String)>;

/// Output lines and whether a hypothesis was violated.
pub struct Report {
    pub lines: Lines,
    pub violated: bool,
}

fn mismatch(msg: impl Into<String>) -> CliError {
    CliError::Lib(Error::UniverseMismatch(msg.into()))
}

pub fn build_measure(doc: &SpecDocument, m: &MeasureExpr) -> Result<MeasureSpec, CliError> {
    Ok(match m {
        MeasureExpr::Lebesgue => MeasureSpec::LebesgueLine,
        MeasureExpr::Counting => MeasureSpec::CountingLine,
        MeasureExpr::Dirac(p) => MeasureSpec::DiracAt(p.clone()),
        MeasureExpr::Component(inner) => sigma_finite_component(&build_measure(doc, inner)?)?,
        MeasureExpr::Name(n) => build_measure(doc, &doc.measures[n])?,
        MeasureExpr::Tabulated { atoms, ground, .. } => {
            MeasureSpec::FiniteTabulated(tabulated(atoms, ground.as_deref())?)
        }
        MeasureExpr::Atomic(entries, _) => {
            let mut gens = Vec::with_capacity(entries.len());
            for (key, weight) in entries {
                gens.push(match (key, weight) {
                    (AtomKey::Point(at), AtomWeight::Plain(w)) => Generator::Point {
                        at: at.clone(),
                        weight: w.clone(),
                    },
                    (AtomKey::Prog(b, s), w) => {
                        let prog = Progression::new(b.clone(), s.clone()).ok_or_else(|| {
                            CliError::Lib(Error::PropertyViolated(format!(
                                "progression step {s} is not positive"
                            )))
                        })?;
                        let rule = match w {
                            AtomWeight::Const(c) | AtomWeight::Plain(c) => {
                                WeightRule::Constant(c.clone())
                            }
                            AtomWeight::Geom(a, r) => WeightRule::Geometric {
                                first: a.clone(),
                                ratio: r.clone(),
                            },
                        };
                        Generator::Progression { prog, rule }
                    }
                    (AtomKey::Point(_), _) => unreachable!("points carry plain weights"),
                });
            }
            MeasureSpec::CountableAtomic(Atomic::new(gens)?)
        }
    })
}

fn tabulated(
    atoms: &[(Vec<String>, crate::numerics::ExtNonNeg)],
    ground: Option<&[String]>,
) -> Result<Tabulated, CliError> {
    let labels: Vec<String> = match ground {
        Some(g) => g.to_vec(),
        None => {
            let mut seen: Vec<String> = Vec::new();
            for l in atoms.iter().flat_map(|(a, _)| a) {
                if !seen.contains(l) {
                    seen.push(l.clone());
                }
            }
            seen
        }
    };
    let universe = FinUniverse::new(labels)?;
    let mut map = Vec::with_capacity(atoms.len());
    let mut used = 0u128;
    for (labels, w) in atoms {
        let a = FinSet::from_labels(&universe, labels)?;
        if a.is_empty() {
            return Err(CliError::Lib(Error::PropertyViolated(
                "atoms must be nonempty".into(),
            )));
        }
        if a.bits() & used != 0 {
            return Err(CliError::Lib(Error::PropertyViolated(format!(
                "atom {a} overlaps an earlier atom"
            ))));
        }
        used |= a.bits();
        map.push((a, w.clone()));
    }
    let bits = map.iter().map(|(a, _)| a.bits()).collect();
    let ring = SigmaRingFin::from_atom_bits(&universe, bits, size_limit())?;
    Ok(Tabulated::from_map(ring, &map)?)
}

pub struct Resolver<'a> {
    doc: &'a SpecDocument,
}

impl<'a> Resolver<'a> {
    pub fn new(doc: &'a SpecDocument) -> Self {
        Resolver { doc }
    }

    pub fn set(&self, e: &Expr, g: &Ground) -> Result<Set, CliError> {
        Ok(match e {
            Expr::Name(n) => self.set(&self.doc.sets[n], g)?,
            Expr::Binary(op, l, r) => {
                let (l, r) = (self.set(l, g)?, self.set(r, g)?);
                match op {
                    Op::Union => l.union(&r)?,
                    Op::Inter => l.intersect(&r)?,
                    Op::Diff => l.difference(&r)?,
                }
            }
            Expr::Product(_, pos) => {
                return Err(mismatch(format!(
                    "a product at {pos} where a set is expected"
                )))
            }
            Expr::Braced(elems) => match g {
                Ground::Finite(u) => {
                    let labels: Vec<&str> = elems.iter().map(|x| x.text.as_str()).collect();
                    Set::Finite(FinSet::from_labels(u, &labels)?)
                }
                Ground::Real => {
                    let mut pts = Vec::with_capacity(elems.len());
                    for x in elems {
                        pts.push(x.value.clone().ok_or_else(|| {
                            mismatch(format!("`{}` is not a real number", x.text))
                        })?);
                    }
                    Set::Real(RealSet::points(pts))
                }
            },
            Expr::Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                real_only(g, "an interval")?;
                Set::Real(
                    Interval::new(lo.clone(), *lo_closed, hi.clone(), *hi_closed)
                        .map(RealSet::from_interval)
                        .unwrap_or_default(),
                )
            }
            Expr::Prog(b, s) => {
                real_only(g, "a progression")?;
                let p = Progression::new(b.clone(), s.clone()).ok_or_else(|| {
                    CliError::Lib(Error::PropertyViolated(format!(
                        "progression step {s} is not positive"
                    )))
                })?;
                Set::Real(RealSet::progression(p))
            }
        })
    }

    pub fn rect(&self, e: &Expr, g: &Ground, h: &Ground) -> Result<RectUnion<Set, Set>, CliError> {
        Ok(match e {
            Expr::Name(n) => self.rect(&self.doc.sets[n], g, h)?,
            Expr::Binary(op, l, r) => {
                let (l, r) = (self.rect(l, g, h)?, self.rect(r, g, h)?);
                match op {
                    Op::Union => l.union(&r)?,
                    Op::Inter => l.intersect(&r)?,
                    Op::Diff => l.difference(&r)?,
                }
            }
            Expr::Product(parts, pos) => match parts.as_slice() {
                [a, b] => RectUnion::rect(self.set(a, g)?, self.set(b, h)?),
                _ => {
                    return Err(mismatch(format!(
                        "the product at {pos} has {} factors, expected 2",
                        parts.len()
                    )))
                }
            },
            Expr::Braced(elems) if elems.is_empty() => RectUnion::empty(),
            _ => return Err(mismatch("expected a union of rectangles")),
        })
    }

    pub fn boxes(&self, e: &Expr, g: [&Ground; 3]) -> Result<Vec<(Set, Set, Set)>, CliError> {
        Ok(match e {
            Expr::Name(n) => self.boxes(&self.doc.sets[n], g)?,
            Expr::Binary(Op::Union, l, r) => {
                let mut out = self.boxes(l, g)?;
                out.extend(self.boxes(r, g)?);
                out
            }
            Expr::Binary(..) => {
                return Err(mismatch("boxes of three factors only combine by union"))
            }
            Expr::Product(parts, pos) => match parts.as_slice() {
                [a, b, c] => vec![(self.set(a, g[0])?, self.set(b, g[1])?, self.set(c, g[2])?)],
                _ => {
                    return Err(mismatch(format!(
                        "the product at {pos} has {} factors, expected 3",
                        parts.len()
                    )))
                }
            },
            Expr::Braced(elems) if elems.is_empty() => Vec::new(),
            _ => return Err(mismatch("expected a union of boxes")),
        })
    }

    pub fn function<S: SetOps>(
        &self,
        f: &FnExpr,
        leaf: &dyn Fn(&Expr) -> Result<S, CliError>,
    ) -> Result<SimpleFunction<S>, CliError> {
        let mut terms = Vec::new();
        self.collect_terms(f, &crate::numerics::Rational::one(), leaf, &mut terms)?;
        Ok(SimpleFunction::new(terms)?)
    }

    fn collect_terms<S: SetOps>(
        &self,
        f: &FnExpr,
        scale: &crate::numerics::Rational,
        leaf: &dyn Fn(&Expr) -> Result<S, CliError>,
        out: &mut Vec<(crate::numerics::Rational, S)>,
    ) -> Result<(), CliError> {
        for (c, atom) in f {
            let c = c * scale;
            match atom {
                FnAtom::Ind(e) => out.push((c, leaf(e)?)),
                FnAtom::Ref(n) => self.collect_terms(&self.doc.fns[n], &c, leaf, out)?,
            }
        }
        Ok(())
    }
}

fn real_only(g: &Ground, what: &str) -> Result<(), CliError> {
    match g {
        Ground::Real => Ok(()),
        Ground::Finite(u) => Err(mismatch(format!(
            "{what} over the finite ground {}",
            FinSet::full(u)
        ))),
    }
}

fn bool_str(b: bool) -> String {
    if b { "true" } else { "false" }.to_string()
}

fn single_fn(target: &Target) -> &FnExpr {
    match target {
        Target::Function(f) => f,
        _ => unreachable!("the parser pairs function commands with functions"),
    }
}

fn single_set(target: &Target) -> &Expr {
    match target {
        Target::Set(e) => e,
        _ => unreachable!("the parser pairs set commands with sets"),
    }
}

pub fn run_command(doc: &SpecDocument) -> Result<Report, CliError> {
    let cmd: &Command = doc
        .command
        .as_ref()
        .expect("a parsed document carries a command");
    let r = Resolver::new(doc);
    let ms = cmd
        .measures
        .iter()
        .map(|m| build_measure(doc, m))
        .collect::<Result<Vec<_>, _>>()?;
    let gs: Vec<Ground> = ms.iter().map(MeasureSpec::ground).collect();
    let mut lines: Lines = Vec::new();
    let mut violated = false;

    match cmd.kind {
        CommandKind::Eval | CommandKind::Classify | CommandKind::Product => {
            let e = single_set(&cmd.target);
            let (value, class) = match ms.as_slice() {
                [m] => {
                    let s = r.set(e, &gs[0])?;
                    (m.eval(&s)?, m.finiteness(&s)?)
                }
                [m, n] => ProductMeasure::new(m, n).measure(&r.rect(e, &gs[0], &gs[1])?)?,
                [m, n, k] => {
                    let t = TripleRectUnion::new(r.boxes(e, [&gs[0], &gs[1], &gs[2]])?);
                    product3(m, n, k, &t)?
                }
                _ => unreachable!("arity checked by the parser"),
            };
            if cmd.kind != CommandKind::Classify {
                lines.push(("value", value.to_string()));
            }
            lines.push(("class", class.to_string()));
        }
        CommandKind::Component => {
            let c = sigma_finite_component(&ms[0])?;
            let s = r.set(single_set(&cmd.target), &gs[0])?;
            lines.push(("measure", c.to_string()));
            lines.push(("value", c.eval(&s)?.to_string()));
            lines.push(("class", c.finiteness(&s)?.to_string()));
        }
        CommandKind::Integrate => {
            let f = single_fn(&cmd.target);
            let (integrable, value) = match ms.as_slice() {
                [m] => {
                    let f = r.function(f, &|e| r.set(e, &gs[0]))?;
                    integral_lines(&f, m)?
                }
                [m, n] => {
                    let f = r.function(f, &|e| r.rect(e, &gs[0], &gs[1]))?;
                    integral_lines(&f, &ProductMeasure::new(m, n))?
                }
                _ => unreachable!("arity checked by the parser"),
            };
            lines.push(("integrable", bool_str(integrable)));
            lines.push(("value", value));
        }
        CommandKind::Tensor => {
            let f = r.function(single_fn(&cmd.target), &|e| r.rect(e, &gs[0], &gs[1]))?;
            lines.push(("value", tensor_functional(&f, &ms[0], &ms[1])?.to_string()));
        }
        CommandKind::Fubini => {
            let f = r.function(single_fn(&cmd.target), &|e| r.rect(e, &gs[0], &gs[1]))?;
            let rep = fubini_check(&f, &ms[0], &ms[1])?;
            lines.push(("product", rep.product_value.to_string()));
            lines.push(("iterated_sv", rep.iterated_sv.to_string()));
            lines.push(("iterated_ts", rep.iterated_ts.to_string()));
            match rep.verdict {
                Verdict::AllEqual => lines.push(("verdict", "all-equal".into())),
                Verdict::HypothesisViolated(reason) => {
                    violated = true;
                    lines.push(("verdict", "hypothesis-violated".into()));
                    lines.push(("reason", reason));
                }
            }
        }
        CommandKind::AeEqual => {
            let Target::Pair(f, g) = &cmd.target else {
                unreachable!("the parser pairs aeequal with two functions")
            };
            let same = match ms.as_slice() {
                [m] => {
                    let leaf = |e: &Expr| r.set(e, &gs[0]);
                    ae_equal(&r.function(f, &leaf)?, &r.function(g, &leaf)?, m)?
                }
                [m, n] => {
                    let leaf = |e: &Expr| r.rect(e, &gs[0], &gs[1]);
                    let p = ProductMeasure::new(m, n);
                    ae_equal(&r.function(f, &leaf)?, &r.function(g, &leaf)?, &p)?
                }
                _ => unreachable!("arity checked by the parser"),
            };
            lines.push(("ae_equal", bool_str(same)));
        }
    }
    Ok(Report { lines, violated })
}

fn integral_lines<M: Measure>(
    f: &SimpleFunction<M::Set>,
    m: &M,
) -> Result<(bool, String), CliError> {
    if is_integrable(f, m)? {
        Ok((true, integrate(f, m)?.to_string()))
    } else {
        Ok((false, signed_integral(f, m)?.to_string()))
    }
}

/// Reads back a rendered real-line set; used by round-trip checks.
pub fn resolve_real_set(text: &str) -> Result<RealSet, CliError> {
    let e = super::parser::parse_set_expr(text)?;
    let doc = SpecDocument::default();
    match Resolver::new(&doc).set(&e, &Ground::Real)? {
        Set::Real(s) => Ok(s),
        Set::Finite(_) => unreachable!("real ground"),
    }
}

/// Reads back a rendered set over a finite ground.
pub fn resolve_fin_set(text: &str, universe: &Arc<FinUniverse>) -> Result<FinSet, CliError> {
    let e = super::parser::parse_set_expr(text)?;
    let doc = SpecDocument::default();
    match Resolver::new(&doc).set(&e, &Ground::Finite(universe.clone()))? {
        Set::Finite(s) => Ok(s),
        Set::Real(_) => unreachable!("finite ground"),
    }
}

/// Reads back a rendered measure constructor.
pub fn resolve_measure(text: &str) -> Result<MeasureSpec, CliError> {
    let m = super::parser::parse_measure_expr(text)?;
    build_measure(&SpecDocument::default(), &m)
}
