//! Declarations, expressions and the command line of a spec file.

use std::collections::HashMap;

use super::lexer::{tokenize, Pos, Tok, Token};
use super::CliError;
use crate::numerics::{ExtNonNeg, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Elem {
    pub text: String,
    pub value: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Union,
    Inter,
    Diff,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Interval {
        lo: Option<Rational>,
        lo_closed: bool,
        hi: Option<Rational>,
        hi_closed: bool,
    },
    Braced(Vec<Elem>),
    Prog(Rational, Rational),
    Binary(Op, Box<Expr>, Box<Expr>),
    /// `(A x B)` or `(A x B x C)`.
    Product(Vec<Expr>, Pos),
}

#[derive(Clone, Debug, PartialEq)]
pub enum FnAtom {
    Ind(Expr),
    Ref(String),
}

pub type FnExpr = Vec<(Rational, FnAtom)>;

#[derive(Clone, Debug, PartialEq)]
pub enum AtomKey {
    Point(Rational),
    Prog(Rational, Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub enum AtomWeight {
    Plain(ExtNonNeg),
    Const(ExtNonNeg),
    Geom(Rational, Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureExpr {
    Lebesgue,
    Counting,
    Dirac(Rational),
    Tabulated {
        atoms: Vec<(Vec<String>, ExtNonNeg)>,
        ground: Option<Vec<String>>,
        pos: Pos,
    },
    Atomic(Vec<(AtomKey, AtomWeight)>, Pos),
    Component(Box<MeasureExpr>),
    Name(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Eval,
    Classify,
    Component,
    Product,
    Integrate,
    Tensor,
    Fubini,
    AeEqual,
}

impl CommandKind {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "eval" => CommandKind::Eval,
            "classify" => CommandKind::Classify,
            "component" => CommandKind::Component,
            "product" => CommandKind::Product,
            "integrate" => CommandKind::Integrate,
            "tensor" => CommandKind::Tensor,
            "fubini" => CommandKind::Fubini,
            "aeequal" => CommandKind::AeEqual,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            CommandKind::Eval => "eval",
            CommandKind::Classify => "classify",
            CommandKind::Component => "component",
            CommandKind::Product => "product",
            CommandKind::Integrate => "integrate",
            CommandKind::Tensor => "tensor",
            CommandKind::Fubini => "fubini",
            CommandKind::AeEqual => "aeequal",
        }
    }

    fn arity(self) -> (usize, usize) {
        match self {
            CommandKind::Eval | CommandKind::Component => (1, 1),
            CommandKind::Classify => (1, 3),
            CommandKind::Product => (2, 3),
            CommandKind::Integrate | CommandKind::AeEqual => (1, 2),
            CommandKind::Tensor | CommandKind::Fubini => (2, 2),
        }
    }

    fn takes_functions(self) -> bool {
        matches!(
            self,
            CommandKind::Integrate
                | CommandKind::Tensor
                | CommandKind::Fubini
                | CommandKind::AeEqual
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Set(Expr),
    Function(FnExpr),
    Pair(FnExpr, FnExpr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Command {
    pub kind: CommandKind,
    pub measures: Vec<MeasureExpr>,
    pub target: Target,
    pub pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Measure,
    Set,
    Rect,
    Fn,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpecDocument {
    pub measures: HashMap<String, MeasureExpr>,
    pub sets: HashMap<String, Expr>,
    pub fns: HashMap<String, FnExpr>,
    pub command: Option<Command>,
}

const RESERVED: &[&str] = &[
    "measure",
    "set",
    "rect",
    "fn",
    "cmd",
    "x",
    "inf",
    "prog",
    "ind",
    "lebesgue",
    "counting",
    "dirac",
    "tabulated",
    "atomic",
    "component",
    "on",
    "const",
    "geom",
];

const MEASURE_WORDS: &[&str] = &[
    "lebesgue",
    "counting",
    "dirac",
    "tabulated",
    "atomic",
    "component",
];

pub fn parse_spec(text: &str) -> Result<SpecDocument, CliError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        kinds: HashMap::new(),
        doc: SpecDocument::default(),
        framed: false,
    };
    p.document()?;
    Ok(p.doc)
}

/// A lone set or rectangle expression, for rendering round trips.
pub fn parse_set_expr(text: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        kinds: HashMap::new(),
        doc: SpecDocument::default(),
        framed: false,
    };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// A lone measure constructor.
pub fn parse_measure_expr(text: &str) -> Result<MeasureExpr, CliError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        kinds: HashMap::new(),
        doc: SpecDocument::default(),
        framed: false,
    };
    let m = p.measure()?;
    p.expect_eof()?;
    Ok(m)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    kinds: HashMap<String, DeclKind>,
    doc: SpecDocument,
    framed: bool,
}

fn parse_err(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        pos,
        msg: msg.into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.is_sym(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn unexpected(&self, wanted: &str) -> CliError {
        parse_err(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek()),
        )
    }

    fn expect_sym(&mut self, c: char) -> Result<(), CliError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), CliError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn expect_eof(&mut self) -> Result<(), CliError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), CliError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// Errors inside a bracketed construct are reported at its opening token.
    fn bracketed<T>(
        &mut self,
        what: &str,
        body: impl FnOnce(&mut Self) -> Result<T, CliError>,
    ) -> Result<T, CliError> {
        let open = self.pos();
        let out = body(self);
        match out {
            Err(CliError::Parse { pos, msg }) if !self.framed => {
                self.framed = true;
                Err(parse_err(open, format!("malformed {what}: {msg} at {pos}")))
            }
            other => other,
        }
    }

    fn document(&mut self) -> Result<(), CliError> {
        loop {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(w) if w == "measure" => {
                    self.bump();
                    let name = self.declare(DeclKind::Measure)?;
                    let m = self.measure()?;
                    self.doc.measures.insert(name, m);
                }
                Tok::Ident(w) if w == "set" || w == "rect" => {
                    self.bump();
                    let kind = if w == "set" {
                        DeclKind::Set
                    } else {
                        DeclKind::Rect
                    };
                    let name = self.declare(kind)?;
                    let e = self.expr()?;
                    self.doc.sets.insert(name, e);
                }
                Tok::Ident(w) if w == "fn" => {
                    self.bump();
                    let name = self.declare(DeclKind::Fn)?;
                    let f = self.fn_expr()?;
                    self.doc.fns.insert(name, f);
                }
                Tok::Ident(w) if w == "cmd" => {
                    self.bump();
                    if self.doc.command.is_some() {
                        return Err(parse_err(pos, "only one command per file"));
                    }
                    let c = self.command(pos)?;
                    self.doc.command = Some(c);
                }
                _ => return Err(self.unexpected("a declaration or `cmd`")),
            }
        }
        if self.doc.command.is_none() {
            return Err(parse_err(self.pos(), "no command given"));
        }
        Ok(())
    }

    fn declare(&mut self, kind: DeclKind) -> Result<String, CliError> {
        let (name, pos) = self.ident("a name")?;
        if RESERVED.contains(&name.as_str()) {
            return Err(parse_err(pos, format!("`{name}` is reserved")));
        }
        if self.kinds.contains_key(&name) {
            return Err(parse_err(pos, format!("`{name}` is declared twice")));
        }
        self.expect_sym('=')?;
        self.kinds.insert(name.clone(), kind);
        Ok(name)
    }

    fn reference(&self, name: &str, pos: Pos, allowed: &[DeclKind]) -> Result<(), CliError> {
        match self.kinds.get(name) {
            None => Err(CliError::Name {
                pos,
                name: name.to_string(),
            }),
            Some(k) if allowed.contains(k) => Ok(()),
            Some(k) => Err(parse_err(
                pos,
                format!("`{name}` is a {k:?} declaration and cannot be used here").to_lowercase(),
            )),
        }
    }

    fn unsigned_rational(&mut self) -> Result<Rational, CliError> {
        let pos = self.pos();
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.unexpected("a number"));
        };
        self.bump();
        let mut text = n;
        if self.eat_sym('/') {
            let Tok::Num(d) = self.peek().clone() else {
                return Err(self.unexpected("a denominator"));
            };
            self.bump();
            text = format!("{text}/{d}");
        }
        text.parse()
            .map_err(|_| parse_err(pos, format!("`{text}` is not a rational number")))
    }

    fn rational(&mut self) -> Result<Rational, CliError> {
        if self.eat_sym('-') {
            Ok(-self.unsigned_rational()?)
        } else {
            self.unsigned_rational()
        }
    }

    fn weight(&mut self) -> Result<ExtNonNeg, CliError> {
        if self.is_word("inf") {
            self.bump();
            return Ok(ExtNonNeg::Infinity);
        }
        let pos = self.pos();
        let r = self.rational()?;
        ExtNonNeg::try_finite(r).ok_or_else(|| parse_err(pos, "weights must be nonnegative"))
    }

    fn label(&mut self) -> Result<String, CliError> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Num(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("a label")),
        }
    }

    fn label_list(&mut self) -> Result<Vec<String>, CliError> {
        self.bracketed("label list", |p| {
            p.expect_sym('{')?;
            let mut out = Vec::new();
            if !p.eat_sym('}') {
                loop {
                    out.push(p.label()?);
                    if p.eat_sym('}') {
                        break;
                    }
                    p.expect_sym(',')?;
                }
            }
            Ok(out)
        })
    }

    fn measure(&mut self) -> Result<MeasureExpr, CliError> {
        let (word, pos) = self.ident("a measure")?;
        match word.as_str() {
            "lebesgue" => Ok(MeasureExpr::Lebesgue),
            "counting" => Ok(MeasureExpr::Counting),
            "dirac" => self.bracketed("dirac", |p| {
                p.expect_sym('(')?;
                let x = p.rational()?;
                p.expect_sym(')')?;
                Ok(MeasureExpr::Dirac(x))
            }),
            "component" => self.bracketed("component", |p| {
                p.expect_sym('(')?;
                let m = p.measure()?;
                p.expect_sym(')')?;
                Ok(MeasureExpr::Component(Box::new(m)))
            }),
            "tabulated" => {
                let atoms = self.bracketed("tabulated measure", |p| {
                    p.expect_sym('{')?;
                    let mut atoms = Vec::new();
                    if !p.eat_sym('}') {
                        loop {
                            let key = if p.is_sym('{') {
                                p.label_list()?
                            } else {
                                vec![p.label()?]
                            };
                            p.expect_sym(':')?;
                            atoms.push((key, p.weight()?));
                            if p.eat_sym('}') {
                                break;
                            }
                            p.expect_sym(',')?;
                        }
                    }
                    Ok(atoms)
                })?;
                let ground = if self.is_word("on") {
                    self.bump();
                    Some(self.label_list()?)
                } else {
                    None
                };
                Ok(MeasureExpr::Tabulated { atoms, ground, pos })
            }
            "atomic" => {
                let entries = self.bracketed("atomic measure", |p| {
                    p.expect_sym('{')?;
                    let mut entries = Vec::new();
                    if !p.eat_sym('}') {
                        loop {
                            entries.push(p.atomic_entry()?);
                            if p.eat_sym('}') {
                                break;
                            }
                            p.expect_sym(',')?;
                        }
                    }
                    Ok(entries)
                })?;
                Ok(MeasureExpr::Atomic(entries, pos))
            }
            _ => {
                self.reference(&word, pos, &[DeclKind::Measure])?;
                Ok(MeasureExpr::Name(word))
            }
        }
    }

    fn atomic_entry(&mut self) -> Result<(AtomKey, AtomWeight), CliError> {
        if self.is_word("prog") {
            let (b, s) = self.prog()?;
            self.expect_sym(':')?;
            let (word, _) = self.ident("`const` or `geom`")?;
            let w = match word.as_str() {
                "const" => {
                    self.expect_sym('(')?;
                    let w = self.weight()?;
                    self.expect_sym(')')?;
                    AtomWeight::Const(w)
                }
                "geom" => {
                    self.expect_sym('(')?;
                    let a = self.rational()?;
                    self.expect_sym(',')?;
                    let r = self.rational()?;
                    self.expect_sym(')')?;
                    AtomWeight::Geom(a, r)
                }
                _ => return Err(parse_err(self.pos(), "expected `const` or `geom`")),
            };
            Ok((AtomKey::Prog(b, s), w))
        } else {
            let x = self.rational()?;
            self.expect_sym(':')?;
            Ok((AtomKey::Point(x), AtomWeight::Plain(self.weight()?)))
        }
    }

    fn prog(&mut self) -> Result<(Rational, Rational), CliError> {
        self.expect_word("prog")?;
        self.bracketed("progression", |p| {
            p.expect_sym('(')?;
            let b = p.rational()?;
            p.expect_sym(',')?;
            let s = p.rational()?;
            p.expect_sym(')')?;
            Ok((b, s))
        })
    }

    pub fn expr(&mut self) -> Result<Expr, CliError> {
        let mut left = self.term()?;
        loop {
            let op = if self.eat_sym('|') || self.eat_sym('+') {
                Op::Union
            } else if self.eat_sym('\\') {
                Op::Diff
            } else {
                return Ok(left);
            };
            let right = self.term()?;
            left = Expr::Binary(op, Box::new(left), Box::new(right));
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut left = self.atom()?;
        while self.eat_sym('&') {
            let right = self.atom()?;
            left = Expr::Binary(Op::Inter, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Sym('[') => self.interval(),
            Tok::Sym('(') => match self.peek2() {
                Tok::Sym('-') | Tok::Num(_) => self.interval(),
                Tok::Ident(w) if w == "inf" => self.interval(),
                _ => self.group(),
            },
            Tok::Sym('{') => self.bracketed("point list", |p| {
                p.expect_sym('{')?;
                let mut elems = Vec::new();
                if !p.eat_sym('}') {
                    loop {
                        elems.push(p.elem()?);
                        if p.eat_sym('}') {
                            break;
                        }
                        p.expect_sym(',')?;
                    }
                }
                Ok(Expr::Braced(elems))
            }),
            Tok::Ident(w) if w == "prog" => {
                let (b, s) = self.prog()?;
                Ok(Expr::Prog(b, s))
            }
            Tok::Ident(w) if !RESERVED.contains(&w.as_str()) => {
                self.bump();
                self.reference(&w, pos, &[DeclKind::Set, DeclKind::Rect])?;
                Ok(Expr::Name(w))
            }
            _ => Err(self.unexpected("a set")),
        }
    }

    fn elem(&mut self) -> Result<Elem, CliError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Elem {
                    text: s,
                    value: None,
                })
            }
            Tok::Num(_) | Tok::Sym('-') => {
                let start = self.at;
                let r = self.rational()?;
                let text = self.toks[start..self.at]
                    .iter()
                    .map(|t| match &t.tok {
                        Tok::Num(s) => s.clone(),
                        Tok::Sym(c) => c.to_string(),
                        _ => unreachable!("rational tokens"),
                    })
                    .collect();
                Ok(Elem {
                    text,
                    value: Some(r),
                })
            }
            _ => Err(self.unexpected("a point or label")),
        }
    }

    fn bound(&mut self, lower: bool) -> Result<Option<Rational>, CliError> {
        let pos = self.pos();
        if self.is_sym('-') && matches!(self.peek2(), Tok::Ident(w) if w == "inf") {
            self.bump();
            self.bump();
            return if lower {
                Ok(None)
            } else {
                Err(parse_err(pos, "`-inf` cannot be an upper bound"))
            };
        }
        if self.is_word("inf") {
            self.bump();
            return if lower {
                Err(parse_err(pos, "`inf` cannot be a lower bound"))
            } else {
                Ok(None)
            };
        }
        Ok(Some(self.rational()?))
    }

    fn interval(&mut self) -> Result<Expr, CliError> {
        self.bracketed("interval", |p| {
            let lo_closed = p.is_sym('[');
            if !p.eat_sym('[') {
                p.expect_sym('(')?;
            }
            let lo = p.bound(true)?;
            p.expect_sym(',')?;
            let hi = p.bound(false)?;
            let hi_closed = p.is_sym(']');
            if !p.eat_sym(']') {
                p.expect_sym(')')?;
            }
            if (lo.is_none() && lo_closed) || (hi.is_none() && hi_closed) {
                return Err(parse_err(p.pos(), "an infinite endpoint must be open"));
            }
            Ok(Expr::Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            })
        })
    }

    fn group(&mut self) -> Result<Expr, CliError> {
        let open = self.pos();
        self.bracketed("parenthesized expression", |p| {
            p.expect_sym('(')?;
            let first = p.expr()?;
            if !p.is_word("x") {
                p.expect_sym(')')?;
                return Ok(first);
            }
            let mut parts = vec![first];
            while p.is_word("x") {
                p.bump();
                parts.push(p.expr()?);
            }
            if parts.len() > 3 {
                return Err(parse_err(open, "at most three factors are supported"));
            }
            p.expect_sym(')')?;
            Ok(Expr::Product(parts, open))
        })
    }

    fn fn_expr(&mut self) -> Result<FnExpr, CliError> {
        let mut terms = Vec::new();
        let mut negative = self.eat_sym('-');
        loop {
            let mut c = if matches!(self.peek(), Tok::Num(_)) {
                let c = self.unsigned_rational()?;
                self.expect_sym('*')?;
                c
            } else {
                Rational::one()
            };
            if negative {
                c = -c;
            }
            let atom = if self.is_word("ind") {
                self.bump();
                self.bracketed("indicator", |p| {
                    p.expect_sym('(')?;
                    let e = p.expr()?;
                    p.expect_sym(')')?;
                    Ok(FnAtom::Ind(e))
                })?
            } else {
                let (name, pos) = self.ident("`ind(...)` or a function name")?;
                self.reference(&name, pos, &[DeclKind::Fn])?;
                FnAtom::Ref(name)
            };
            terms.push((c, atom));
            negative = if self.eat_sym('+') {
                false
            } else if self.eat_sym('-') {
                true
            } else {
                return Ok(terms);
            };
        }
    }

    fn command(&mut self, pos: Pos) -> Result<Command, CliError> {
        let (word, wpos) = self.ident("a command")?;
        let kind = CommandKind::from_name(&word)
            .ok_or_else(|| parse_err(wpos, format!("unknown command `{word}`")))?;
        let mut measures = Vec::new();
        while let Tok::Ident(w) = self.peek().clone() {
            let is_measure = MEASURE_WORDS.contains(&w.as_str())
                || self.kinds.get(&w) == Some(&DeclKind::Measure);
            if !is_measure {
                break;
            }
            measures.push(self.measure()?);
        }
        let (lo, hi) = kind.arity();
        if measures.len() < lo || measures.len() > hi {
            let range = if lo == hi {
                format!("{lo}")
            } else {
                format!("{lo} to {hi}")
            };
            return Err(parse_err(
                wpos,
                format!(
                    "`{}` takes {range} measures, got {}",
                    kind.name(),
                    measures.len()
                ),
            ));
        }
        let target = if kind == CommandKind::AeEqual {
            let f = self.fn_expr()?;
            self.expect_sym(',')?;
            Target::Pair(f, self.fn_expr()?)
        } else if kind.takes_functions() {
            Target::Function(self.fn_expr()?)
        } else {
            Target::Set(self.expr()?)
        };
        Ok(Command {
            kind,
            measures,
            target,
            pos,
        })
    }
}
