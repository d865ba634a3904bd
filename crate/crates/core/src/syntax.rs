//! Formulas, sequents, parsing and printing.
//!
//! Atoms are indexed (`p0`, `p1`, …). Diamond, material implication and the
//! biconditional are parser sugar; the AST keeps only primitive connectives.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(u32),
    Top,
    Bot,
    Not(Arc<Formula>),
    Box(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    /// The primitive conditional `->>`.
    Fc(Arc<Formula>, Arc<Formula>),
}

pub fn p(j: u32) -> Formula {
    Formula::Atom(j)
}

impl Formula {
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Arc::new(a))
    }
    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }
    pub fn fc(a: Formula, b: Formula) -> Formula {
        Formula::Fc(Arc::new(a), Arc::new(b))
    }
    /// `a -> b`, i.e. `~a \/ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }
    /// `a <-> b`, i.e. `(a -> b) /\ (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }
    /// `<>a`, i.e. `~[]~a`.
    pub fn diamond(a: Formula) -> Formula {
        Formula::not(Formula::boxed(Formula::not(a)))
    }
    /// Conjunction of all members; `T` when empty.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }
    /// Disjunction of all members; `F` when empty.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Bot,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => vec![],
            Formula::Not(a) | Formula::Box(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Fc(a, b) => vec![a, b],
        }
    }

    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(a) => matches!(**a, Formula::Atom(_)),
            _ => false,
        }
    }

    pub fn is_box_free(&self) -> bool {
        match self {
            Formula::Box(_) => false,
            _ => self.children().iter().all(|c| c.is_box_free()),
        }
    }

    pub fn uses_fc(&self) -> bool {
        match self {
            Formula::Fc(_, _) => true,
            _ => self.children().iter().any(|c| c.uses_fc()),
        }
    }

    pub fn props(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    pub(crate) fn collect_props(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Atom(j) => {
                out.insert(*j);
            }
            _ => self.children().iter().for_each(|c| c.collect_props(out)),
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Box(a) => 1 + a.modal_depth(),
            _ => self.children().iter().map(|c| c.modal_depth()).max().unwrap_or(0),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Height of the syntax tree; atoms and constants have height 1.
    pub fn height(&self) -> usize {
        1 + self.children().iter().map(|c| c.height()).max().unwrap_or(0)
    }

    /// All subformulas, each once, in post-order of first occurrence.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_subformulas(&mut seen, &mut out);
        out
    }

    fn collect_subformulas(&self, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
        for c in self.children() {
            c.collect_subformulas(seen, out);
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }

    pub fn stats(&self) -> FormulaStats {
        FormulaStats {
            props: self.props(),
            modal_depth: self.modal_depth(),
            size: self.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaStats {
    pub props: BTreeSet<u32>,
    pub modal_depth: usize,
    pub size: usize,
}

/// `∇̄φ = □φ ∨ □¬φ`: φ takes a classical value under the box.
pub fn nabla_bar(a: Formula) -> Formula {
    Formula::or(Formula::boxed(a.clone()), Formula::boxed(Formula::not(a)))
}

/// `∇φ = ¬∇̄φ`.
pub fn nabla(a: Formula) -> Formula {
    Formula::not(nabla_bar(a))
}

/// `∇̄(φ,ψ) = ∇̄φ ∧ ∇̄ψ`.
pub fn nabla_bar2(a: Formula, b: Formula) -> Formula {
    Formula::and(nabla_bar(a), nabla_bar(b))
}

// ---------------------------------------------------------------- printing

const PREC_FC: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Fc(..) => PREC_FC,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Atom(j) => write!(out, "p{j}"),
        Formula::Top => out.write_str("T"),
        Formula::Bot => out.write_str("F"),
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(a, PREC_UNARY, out)
        }
        Formula::Box(a) => {
            out.write_str("[]")?;
            write_at(a, PREC_UNARY, out)
        }
        // left-associative
        Formula::And(a, b) => {
            write_at(a, PREC_AND, out)?;
            out.write_str(" /\\ ")?;
            write_at(b, PREC_AND + 1, out)
        }
        Formula::Or(a, b) => {
            write_at(a, PREC_OR, out)?;
            out.write_str(" \\/ ")?;
            write_at(b, PREC_OR + 1, out)
        }
        // right-associative
        Formula::Fc(a, b) => {
            write_at(a, PREC_FC + 1, out)?;
            out.write_str(" ->> ")?;
            write_at(b, PREC_FC, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

pub fn print(f: &Formula) -> String {
    f.to_string()
}

// ----------------------------------------------------------------- parsing

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    Basic,
    /// Admits the primitive conditional `->>`.
    #[default]
    Fc,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("unexpected {found} at position {pos}, expected {expected}")]
    UnexpectedToken {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("`->>` at position {pos} is not available in the basic dialect")]
    FcInBasic { pos: usize },
    #[error("atom index out of range at position {pos}")]
    AtomRange { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Top,
    Bot,
    Not,
    Box,
    Dia,
    And,
    Or,
    Imp,
    Fc,
    Iff,
    LParen,
    RParen,
    Comma,
    Turnstile,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Atom(j) => return write!(f, "`p{j}`"),
            Tok::Top => "`T`",
            Tok::Bot => "`F`",
            Tok::Not => "`~`",
            Tok::Box => "`[]`",
            Tok::Dia => "`<>`",
            Tok::And => "`/\\`",
            Tok::Or => "`\\/`",
            Tok::Imp => "`->`",
            Tok::Fc => "`->>`",
            Tok::Iff => "`<->`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Turnstile => "`=>`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let starts = |i: usize, s: &str| text[i..].starts_with(s);
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = if starts(i, "<->") {
            (Tok::Iff, 3)
        } else if starts(i, "->>") {
            (Tok::Fc, 3)
        } else if starts(i, "->") {
            (Tok::Imp, 2)
        } else if starts(i, "<>") {
            (Tok::Dia, 2)
        } else if starts(i, "[]") {
            (Tok::Box, 2)
        } else if starts(i, "/\\") {
            (Tok::And, 2)
        } else if starts(i, "\\/") {
            (Tok::Or, 2)
        } else if starts(i, "=>") {
            (Tok::Turnstile, 2)
        } else if c == b'~' {
            (Tok::Not, 1)
        } else if c == b'(' {
            (Tok::LParen, 1)
        } else if c == b')' {
            (Tok::RParen, 1)
        } else if c == b',' {
            (Tok::Comma, 1)
        } else if c == b'T' {
            (Tok::Top, 1)
        } else if c == b'F' {
            (Tok::Bot, 1)
        } else if c == b'p' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let n: u32 = text[i + 1..j]
                .parse()
                .map_err(|_| ParseError::AtomRange { pos: i })?;
            (Tok::Atom(n), j - i)
        } else {
            let found = text[i..].chars().next().unwrap_or('?');
            return Err(ParseError::UnexpectedChar { pos: i, found });
        };
        out.push((i, tok));
        i += len;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    dialect: Dialect,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }
    fn pos(&self) -> usize {
        self.toks[self.at].0
    }
    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }
    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::UnexpectedToken {
            pos: self.pos(),
            found: self.peek().to_string(),
            expected,
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.fc()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn fc(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Fc {
            if self.dialect == Dialect::Basic {
                return Err(ParseError::FcInBasic { pos: self.pos() });
            }
            self.bump();
            let rhs = self.fc()?;
            return Ok(Formula::fc(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            Tok::Atom(j) => {
                let j = *j;
                self.bump();
                Ok(Formula::Atom(j))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// Comma-separated formulas up to (not including) `stop`.
    fn list(&mut self, stop: &Tok) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        loop {
            out.push(self.iff()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }
}

pub fn parse(text: &str, dialect: Dialect) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        dialect,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s, Dialect::Fc)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text, Dialect::Fc).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------- sequents

/// `Γ ⇒ Δ` with both sides finite sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Sequent {
    pub ant: BTreeSet<Formula>,
    pub suc: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new<A, S>(ant: A, suc: S) -> Sequent
    where
        A: IntoIterator<Item = Formula>,
        S: IntoIterator<Item = Formula>,
    {
        Sequent {
            ant: ant.into_iter().collect(),
            suc: suc.into_iter().collect(),
        }
    }

    pub fn props(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for f in self.ant.iter().chain(&self.suc) {
            f.collect_props(&mut out);
        }
        out
    }

    pub fn modal_depth(&self) -> usize {
        self.ant
            .iter()
            .chain(&self.suc)
            .map(Formula::modal_depth)
            .max()
            .unwrap_or(0)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ant.iter().chain(&self.suc)
    }

    /// Both sides contain the other's sides.
    pub fn includes(&self, other: &Sequent) -> bool {
        self.ant.is_superset(&other.ant) && self.suc.is_superset(&other.suc)
    }

    pub fn union(&self, other: &Sequent) -> Sequent {
        Sequent {
            ant: self.ant.union(&other.ant).cloned().collect(),
            suc: self.suc.union(&other.suc).cloned().collect(),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |xs: &BTreeSet<Formula>| {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        };
        let (a, s) = (side(&self.ant), side(&self.suc));
        match (a.is_empty(), s.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {s}"),
            (false, true) => write!(f, "{a} =>"),
            (false, false) => write!(f, "{a} => {s}"),
        }
    }
}

/// Parses `A, B => C, D`; either side may be empty.
pub fn parse_sequent(text: &str, dialect: Dialect) -> Result<Sequent, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        dialect,
    };
    let ant = p.list(&Tok::Turnstile)?;
    if *p.peek() != Tok::Turnstile {
        return Err(p.unexpected("`=>`"));
    }
    p.bump();
    let suc = p.list(&Tok::End)?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(Sequent::new(ant, suc))
}

impl FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s, Dialect::Fc)
    }
}
