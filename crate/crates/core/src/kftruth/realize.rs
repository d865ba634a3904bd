//! Realizations (atoms to truth-theoretic sentences), the translation of
//! modal formulas, and seeds read off single-rooted models.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Id, KfError, Universe};
use crate::manyvalued::{atom_map, Scheme, TruthValue};
use crate::mixed::MixedModel;
use crate::syntax::Formula;

/// A sentence written without codes: truth-tellers `t<i>`, the liar `lam`,
/// equations and connectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Eq(u64, u64),
    Teller(usize),
    Liar,
    Not(Box<Surface>),
    And(Box<Surface>, Box<Surface>),
    Or(Box<Surface>, Box<Surface>),
    Fc(Box<Surface>, Box<Surface>),
}

impl Surface {
    pub fn not(a: Surface) -> Surface {
        Surface::Not(Box::new(a))
    }
    pub fn and(a: Surface, b: Surface) -> Surface {
        Surface::And(Box::new(a), Box::new(b))
    }
    pub const TRUE: Surface = Surface::Eq(0, 0);
    pub const FALSE: Surface = Surface::Eq(0, 1);

    fn tellers_needed(&self) -> usize {
        match self {
            Surface::Teller(i) => i + 1,
            Surface::Eq(..) | Surface::Liar => 0,
            Surface::Not(a) => a.tellers_needed(),
            Surface::And(a, b) | Surface::Or(a, b) | Surface::Fc(a, b) => {
                a.tellers_needed().max(b.tellers_needed())
            }
        }
    }

    fn uses_liar(&self) -> bool {
        match self {
            Surface::Liar => true,
            Surface::Eq(..) | Surface::Teller(_) => false,
            Surface::Not(a) => a.uses_liar(),
            Surface::And(a, b) | Surface::Or(a, b) | Surface::Fc(a, b) => a.uses_liar() || b.uses_liar(),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Eq(m, n) => write!(f, "{m}={n}"),
            Surface::Teller(i) => write!(f, "t{i}"),
            Surface::Liar => f.write_str("lam"),
            Surface::Not(a) => write!(f, "~{a}"),
            Surface::And(a, b) => write!(f, "({a} /\\ {b})"),
            Surface::Or(a, b) => write!(f, "({a} \\/ {b})"),
            Surface::Fc(a, b) => write!(f, "({a} ->> {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Teller(usize),
    Lam,
    Eq,
    Not,
    And,
    Or,
    Fc,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>, KfError> {
    let err = |pos: usize, msg: &str| KfError::Parse(format!("at {pos}: {msg}"));
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: usize| b[i..].iter().take_while(|c| c.is_ascii_digit()).count();
    while i < b.len() {
        let rest = &text[i..];
        match b[i] {
            c if c.is_ascii_whitespace() => i += 1,
            b'(' => (out.push(Tok::LParen), i += 1).1,
            b')' => (out.push(Tok::RParen), i += 1).1,
            b'~' => (out.push(Tok::Not), i += 1).1,
            b'=' => (out.push(Tok::Eq), i += 1).1,
            _ if rest.starts_with("/\\") => (out.push(Tok::And), i += 2).1,
            _ if rest.starts_with("\\/") => (out.push(Tok::Or), i += 2).1,
            _ if rest.starts_with("->>") => (out.push(Tok::Fc), i += 3).1,
            _ if rest.starts_with("lam") => (out.push(Tok::Lam), i += 3).1,
            _ if rest.starts_with("T(") => {
                return Err(err(i, "the truth predicate arises only from translating boxes"))
            }
            b't' => {
                let n = digits(i + 1);
                if n == 0 {
                    return Err(err(i, "expected a teller index after 't'"));
                }
                let k = text[i + 1..i + 1 + n].parse().map_err(|_| err(i, "teller index too large"))?;
                out.push(Tok::Teller(k));
                i += 1 + n;
            }
            c if c.is_ascii_digit() => {
                let n = digits(i);
                let k = text[i..i + n].parse().map_err(|_| err(i, "numeral too large"))?;
                out.push(Tok::Num(k));
                i += n;
            }
            _ => return Err(err(i, "unexpected character")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }
    fn fail<T>(&self, what: &str) -> Result<T, KfError> {
        Err(KfError::Parse(format!("token {}: expected {what}", self.at)))
    }

    fn fc(&mut self) -> Result<Surface, KfError> {
        let a = self.or()?;
        if self.peek() == Some(&Tok::Fc) {
            self.bump();
            return Ok(Surface::Fc(Box::new(a), Box::new(self.fc()?)));
        }
        Ok(a)
    }
    fn or(&mut self) -> Result<Surface, KfError> {
        let mut a = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            a = Surface::Or(Box::new(a), Box::new(self.and()?));
        }
        Ok(a)
    }
    fn and(&mut self) -> Result<Surface, KfError> {
        let mut a = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            a = Surface::and(a, self.unary()?);
        }
        Ok(a)
    }
    fn unary(&mut self) -> Result<Surface, KfError> {
        match self.bump() {
            Some(Tok::Not) => Ok(Surface::not(self.unary()?)),
            Some(Tok::Teller(i)) => Ok(Surface::Teller(i)),
            Some(Tok::Lam) => Ok(Surface::Liar),
            Some(Tok::Num(m)) => match (self.bump(), self.bump()) {
                (Some(Tok::Eq), Some(Tok::Num(n))) => Ok(Surface::Eq(m, n)),
                _ => self.fail("an equation m=n"),
            },
            Some(Tok::LParen) => {
                let a = self.fc()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(a),
                    _ => self.fail("')'"),
                }
            }
            _ => self.fail("a sentence"),
        }
    }
}

pub fn parse_surface(text: &str) -> Result<Surface, KfError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let s = p.fc()?;
    if p.at != p.toks.len() {
        return p.fail("end of input");
    }
    Ok(s)
}

impl FromStr for Surface {
    type Err = KfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_surface(s)
    }
}

impl Serialize for Surface {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Surface {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_surface(&text).map_err(serde::de::Error::custom)
    }
}

/// Atom-to-sentence assignment, serialized as `{"p0": "t0 /\\ ~t1"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Realization(#[serde(with = "atom_map")] pub BTreeMap<u32, Surface>);

impl Realization {
    pub fn get(&self, atom: u32) -> Result<&Surface, KfError> {
        self.0.get(&atom).ok_or(KfError::MissingAtom(atom))
    }

    pub fn tellers_needed(&self) -> usize {
        self.0.values().map(Surface::tellers_needed).max().unwrap_or(0)
    }

    pub fn uses_liar(&self) -> bool {
        self.0.values().any(Surface::uses_liar)
    }

    /// A universe with the tellers and liar this realization mentions,
    /// plus `extra_tellers` more.
    pub fn universe(&self, extra_tellers: usize) -> Universe {
        Universe::with(self.tellers_needed().max(extra_tellers), self.uses_liar())
    }
}

/// `p_j ↦ τ_{2j} ∧ ¬τ_{2j+1}`
pub fn witness_realization<I: IntoIterator<Item = u32>>(atoms: I) -> Realization {
    Realization(
        atoms
            .into_iter()
            .map(|j| {
                let j2 = 2 * j as usize;
                (j, Surface::and(Surface::Teller(j2), Surface::not(Surface::Teller(j2 + 1))))
            })
            .collect(),
    )
}

fn rooted(m: &MixedModel) -> Result<(&crate::manyvalued::Valuation, &crate::manyvalued::Valuation), KfError> {
    m.validate()?;
    if m.classical.len() != 1 || m.nonclassical.len() != 1 {
        return Err(KfError::NotSingleRooted);
    }
    Ok((&m.classical[0].valuation, &m.nonclassical[0].valuation))
}

fn realize_each(
    m: &MixedModel,
    pick: impl Fn(TruthValue, TruthValue) -> Surface,
) -> Result<Realization, KfError> {
    let (w, z) = rooted(m)?;
    let mut out = BTreeMap::new();
    for a in m.atoms() {
        let vw = w.get(&a).copied().ok_or(KfError::MissingAtom(a))?;
        let vz = z.get(&a).copied().ok_or(KfError::MissingAtom(a))?;
        out.insert(a, pick(vw, vz));
    }
    Ok(Realization(out))
}

/// For models without gluts: `1 ↦ 0=0`, a gap true at `w` ↦ λ, a gap false
/// at `w` ↦ ¬λ, `0 ↦ 0=1`.
pub fn circ_realization(m: &MixedModel) -> Result<Realization, KfError> {
    realize_each(m, |w, z| match (w, z) {
        (_, TruthValue::One) => Surface::TRUE,
        (TruthValue::One, TruthValue::N) => Surface::Liar,
        (TruthValue::Zero, TruthValue::N) => Surface::not(Surface::Liar),
        _ => Surface::FALSE,
    })
}

/// For models without gaps: `1 ↦ 0=0`, a glut true at `w` ↦ ¬λ, a glut
/// false at `w` ↦ λ, `0 ↦ 0=1`.
pub fn dagger_realization(m: &MixedModel) -> Result<Realization, KfError> {
    realize_each(m, |w, z| match (w, z) {
        (_, TruthValue::One) => Surface::TRUE,
        (TruthValue::One, TruthValue::B) => Surface::not(Surface::Liar),
        (TruthValue::Zero, TruthValue::B) => Surface::Liar,
        _ => Surface::FALSE,
    })
}

impl Universe {
    pub fn add_surface(&mut self, s: &Surface) -> Result<Id, KfError> {
        Ok(match s {
            Surface::Eq(m, n) => self.eq(*m, *n),
            Surface::Teller(i) => self.teller(*i)?,
            Surface::Liar => self.liar_id()?,
            Surface::Not(a) => {
                let a = self.add_surface(a)?;
                self.not(a)
            }
            Surface::And(a, b) => {
                let (a, b) = (self.add_surface(a)?, self.add_surface(b)?);
                self.and(a, b)
            }
            Surface::Or(a, b) => {
                let (a, b) = (self.add_surface(a)?, self.add_surface(b)?);
                self.or(a, b)
            }
            Surface::Fc(a, b) => {
                let (a, b) = (self.add_surface(a)?, self.add_surface(b)?);
                self.fc(a, b)
            }
        })
    }

    /// Translates a modal formula: atoms through `star`, `⊤ ↦ 0=0`,
    /// `⊥ ↦ 0=1`, `□ψ ↦ T⌜ψ*⌝`, connectives to themselves.
    pub fn translate(&mut self, star: &Realization, f: &Formula) -> Result<Id, KfError> {
        self.translate_memo(star, f, &mut HashMap::new())
    }

    pub(crate) fn translate_memo(
        &mut self,
        star: &Realization,
        f: &Formula,
        memo: &mut HashMap<Formula, Id>,
    ) -> Result<Id, KfError> {
        if let Some(id) = memo.get(f) {
            return Ok(*id);
        }
        let mut go = |u: &mut Universe, g: &Formula| u.translate_memo(star, g, memo);
        let id = match f {
            Formula::Atom(j) => self.add_surface(star.get(*j)?)?,
            Formula::Top => self.eq(0, 0),
            Formula::Bot => self.eq(0, 1),
            Formula::Not(a) => {
                let a = go(self, a)?;
                self.not(a)
            }
            Formula::Box(a) => {
                let a = go(self, a)?;
                self.tr(a)
            }
            Formula::And(a, b) => {
                let (a, b) = (go(self, a)?, go(self, b)?);
                self.and(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (go(self, a)?, go(self, b)?);
                self.or(a, b)
            }
            Formula::Fc(a, b) => {
                let (a, b) = (go(self, a)?, go(self, b)?);
                self.fc(a, b)
            }
        };
        memo.insert(f.clone(), id);
        Ok(id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeedAtom {
    Teller(usize),
    Liar,
}

/// `+t0`, `-t1`, `+lam`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeedLit {
    pub atom: SeedAtom,
    pub positive: bool,
}

pub type Seed = Vec<SeedLit>;

impl SeedLit {
    pub fn resolve(&self, u: &Universe) -> Result<Id, KfError> {
        let id = match self.atom {
            SeedAtom::Teller(i) => u.teller(i)?,
            SeedAtom::Liar => u.liar_id()?,
        };
        Ok(if self.positive {
            id
        } else {
            u.neg_of(id).expect("closure adds negated tellers and liar")
        })
    }
}

impl fmt::Display for SeedLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.positive { "+" } else { "-" })?;
        match self.atom {
            SeedAtom::Teller(i) => write!(f, "t{i}"),
            SeedAtom::Liar => f.write_str("lam"),
        }
    }
}

impl FromStr for SeedLit {
    type Err = KfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || KfError::Parse(format!("bad seed literal {s:?} (expected +t<i>, -t<i>, +lam or -lam)"));
        let (positive, rest) = match s.as_bytes().first() {
            Some(b'+') => (true, &s[1..]),
            Some(b'-') => (false, &s[1..]),
            _ => return Err(bad()),
        };
        let atom = if rest == "lam" {
            SeedAtom::Liar
        } else {
            SeedAtom::Teller(rest.strip_prefix('t').and_then(|n| n.parse().ok()).ok_or_else(bad)?)
        };
        Ok(SeedLit { atom, positive })
    }
}

/// Every combination of literals over `n` truth-tellers: each unseeded,
/// true, false or both.
pub fn teller_seeds(n: usize) -> Vec<Seed> {
    let mut out = vec![Seed::new()];
    for i in 0..n {
        let lit = |positive| SeedLit {
            atom: SeedAtom::Teller(i),
            positive,
        };
        out = out
            .into_iter()
            .flat_map(|s| {
                [vec![], vec![lit(true)], vec![lit(false)], vec![lit(true), lit(false)]]
                    .into_iter()
                    .map(move |add| [s.clone(), add].concat())
            })
            .collect();
    }
    out
}

pub fn resolve_seed(u: &Universe, seed: &[SeedLit]) -> Result<Vec<Id>, KfError> {
    seed.iter().map(|l| l.resolve(u)).collect()
}

/// Truth-teller literals describing a faithful single-rooted model, for the
/// witness realization: with `p = p_j`,
/// `τ_{2j}` iff `w ⊩ p` or `z ⊩ p`; `¬τ_{2j}` iff `z ⊩ ¬p`;
/// `τ_{2j+1}` iff `w ⊩ ¬p` and `z ⊩ p`; `¬τ_{2j+1}` iff `z ⊩ p`.
pub fn seed_from_model(m: &MixedModel) -> Result<Seed, KfError> {
    if matches!(m.scheme, Scheme::B3 | Scheme::F3) {
        return Err(KfError::Unsupported {
            what: "the witness seed",
            scheme: m.scheme,
        });
    }
    let (w, z) = rooted(m)?;
    let mut out = Vec::new();
    for a in m.atoms() {
        let vw = *w.get(&a).ok_or(KfError::MissingAtom(a))?;
        let vz = *z.get(&a).ok_or(KfError::MissingAtom(a))?;
        let (w_p, z_p, z_np) = (vw == TruthValue::One, vz.designated(), vz.neg().designated());
        let (even, odd) = (SeedAtom::Teller(2 * a as usize), SeedAtom::Teller(2 * a as usize + 1));
        let lit = |atom, positive| SeedLit { atom, positive };
        if w_p || z_p {
            out.push(lit(even, true));
        }
        if z_np {
            out.push(lit(even, false));
        }
        if !w_p && z_p {
            out.push(lit(odd, true));
        }
        if z_p {
            out.push(lit(odd, false));
        }
    }
    Ok(out)
}
