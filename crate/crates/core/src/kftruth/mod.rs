//! Quantifier-free sentences with a truth predicate over a finite universe,
//! the Kripke jumps, their seeded least fixed points, and classical
//! satisfaction relative to a fixed point.
//!
//! Codes are indices into a [`Universe`]; a sentence may refer to itself,
//! which is how truth-tellers (`τ = T⌜τ⌝`) and the liar (`λ = ¬T⌜λ⌝`) are
//! built.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manyvalued::Scheme;

mod bridge;
mod realize;

pub use bridge::{
    seeds_for, verify_bridge, verify_bridge_all, BridgeMode, BridgeReport, SubformulaCheck,
};
pub use realize::{
    circ_realization, dagger_realization, parse_surface, resolve_seed, seed_from_model,
    teller_seeds, witness_realization,    Realization, Seed, SeedAtom, SeedLit, Surface,
};

pub type Id = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sentence {
    /// numeral equation `m = n`
    Eq(u64, u64),
    /// `T⌜c⌝`
    Tr(Id),
    Not(Id),
    And(Id, Id),
    Or(Id, Id),
    Fc(Id, Id),
    /// slot allocated while building a self-referential sentence
    Reserved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Jump {
    /// strong Kleene
    Sk,
    /// weak Kleene
    Wk,
    /// Aczel–Feferman
    Af,
}

impl Jump {
    pub const ALL: [Jump; 3] = [Jump::Sk, Jump::Wk, Jump::Af];

    pub fn for_scheme(s: Scheme) -> Jump {
        match s {
            Scheme::B3 => Jump::Wk,
            Scheme::F3 => Jump::Af,
            _ => Jump::Sk,
        }
    }

    fn guarded(self) -> bool {
        self != Jump::Sk
    }
}

impl fmt::Display for Jump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Jump::Sk => "sk",
            Jump::Wk => "wk",
            Jump::Af => "af",
        })
    }
}

impl std::str::FromStr for Jump {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sk" => Ok(Jump::Sk),
            "wk" => Ok(Jump::Wk),
            "af" => Ok(Jump::Af),
            _ => Err(format!("unknown jump {s:?} (expected sk, wk or af)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KfError {
    #[error("realization has no sentence for p{0}")]
    MissingAtom(u32),
    #[error("universe has no truth-teller t{0}")]
    UnknownTeller(usize),
    #[error("universe has no liar")]
    NoLiar,
    #[error("seed is not self-supporting: {count} sentences differ after one more jump (first: {first})")]
    NotAFixedPoint { count: usize, first: String },
    #[error("{what} is not available for scheme {scheme}")]
    Unsupported { what: &'static str, scheme: Scheme },
    #[error("model is not single-rooted")]
    NotSingleRooted,
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Model(#[from] crate::mixed::MixedError),
}

/// A finite set of sentences closed under the subsentences the jumps
/// consult.
#[derive(Clone, Debug, Default)]
pub struct Universe {
    nodes: Vec<Sentence>,
    index: HashMap<Sentence, Id>,
    has_fc: Vec<bool>,
    tellers: Vec<Id>,
    liar: Option<Id>,
}

impl Universe {
    pub fn new() -> Self {
        Universe::default()
    }

    /// A universe holding `n` truth-tellers and, if asked, the liar.
    pub fn with(tellers: usize, liar: bool) -> Self {
        let mut u = Universe::new();
        u.ensure_tellers(tellers);
        if liar {
            u.liar();
        }
        u
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: Id) -> Sentence {
        self.nodes[id]
    }

    pub fn ids(&self) -> std::ops::Range<Id> {
        0..self.nodes.len()
    }

    pub fn lookup(&self, s: &Sentence) -> Option<Id> {
        self.index.get(s).copied()
    }

    pub fn neg_of(&self, id: Id) -> Option<Id> {
        self.lookup(&Sentence::Not(id))
    }

    pub fn tellers(&self) -> &[Id] {
        &self.tellers
    }

    pub fn teller(&self, i: usize) -> Result<Id, KfError> {
        self.tellers.get(i).copied().ok_or(KfError::UnknownTeller(i))
    }

    pub fn liar_id(&self) -> Result<Id, KfError> {
        self.liar.ok_or(KfError::NoLiar)
    }

    /// Whether the sentence belongs to the language with `↠`; the `T`
    /// predicate is opaque.
    pub fn uses_fc(&self, id: Id) -> bool {
        self.has_fc[id]
    }

    fn push(&mut self, s: Sentence) -> Id {
        let id = self.nodes.len();
        let fc = match s {
            Sentence::Fc(..) => true,
            Sentence::Not(a) => self.has_fc.get(a).copied().unwrap_or(false),
            Sentence::And(a, b) | Sentence::Or(a, b) => self.has_fc[a] || self.has_fc[b],
            _ => false,
        };
        self.nodes.push(s);
        self.has_fc.push(fc);
        if s != Sentence::Reserved {
            self.index.insert(s, id);
        }
        id
    }

    fn intern(&mut self, s: Sentence) -> Id {
        if let Some(id) = self.lookup(&s) {
            return id;
        }
        let id = self.push(s);
        self.close(id);
        id
    }

    /// Adds what the jump clauses of `id` look at.
    fn close(&mut self, id: Id) {
        match self.nodes[id] {
            Sentence::Tr(c) => {
                self.not(c);
            }
            Sentence::Not(x) => match self.nodes[x] {
                Sentence::And(b, c) => {
                    self.not(b);
                    self.not(c);
                }
                Sentence::Or(b, c) => {
                    let (nb, nc) = (self.not(b), self.not(c));
                    self.and(nb, nc);
                }
                Sentence::Fc(_, c) => {
                    self.not(c);
                }
                _ => {}
            },
            Sentence::Or(b, c) => {
                let (nb, nc) = (self.not(b), self.not(c));
                let both = self.and(nb, nc);
                self.not(both);
            }
            Sentence::Fc(b, _) => {
                self.not(b);
            }
            _ => {}
        }
    }

    pub fn eq(&mut self, m: u64, n: u64) -> Id {
        self.intern(Sentence::Eq(m, n))
    }
    pub fn tr(&mut self, c: Id) -> Id {
        self.intern(Sentence::Tr(c))
    }
    pub fn not(&mut self, a: Id) -> Id {
        self.intern(Sentence::Not(a))
    }
    pub fn and(&mut self, a: Id, b: Id) -> Id {
        self.intern(Sentence::And(a, b))
    }
    pub fn or(&mut self, a: Id, b: Id) -> Id {
        self.intern(Sentence::Or(a, b))
    }
    pub fn fc(&mut self, a: Id, b: Id) -> Id {
        self.intern(Sentence::Fc(a, b))
    }

    /// A fresh truth-teller `τ_i = T⌜τ_i⌝`; returns its id.
    pub fn add_teller(&mut self) -> Id {
        let id = self.nodes.len();
        self.push(Sentence::Tr(id));
        self.close(id);
        self.tellers.push(id);
        id
    }

    pub fn ensure_tellers(&mut self, n: usize) {
        while self.tellers.len() < n {
            self.add_teller();
        }
    }

    /// The liar `λ = ¬T⌜λ⌝`, created on first use.
    pub fn liar(&mut self) -> Id {
        if let Some(l) = self.liar {
            return l;
        }
        let l = self.push(Sentence::Reserved);
        let x = self.push(Sentence::Tr(l));
        self.index.insert(Sentence::Tr(l), x);
        self.nodes[l] = Sentence::Not(x);
        self.index.insert(Sentence::Not(x), l);
        self.liar = Some(l);
        self.close(x);
        self.close(l);
        l
    }

    pub fn print(&self, id: Id) -> String {
        match self.nodes[id] {
            Sentence::Eq(m, n) => format!("{m}={n}"),
            Sentence::Tr(c) => format!("T({c})"),
            Sentence::Not(a) => format!("not {}", self.print(a)),
            Sentence::And(a, b) => format!("({} and {})", self.print(a), self.print(b)),
            Sentence::Or(a, b) => format!("({} or {})", self.print(a), self.print(b)),
            Sentence::Fc(a, b) => format!("({} ->> {})", self.print(a), self.print(b)),
            Sentence::Reserved => "?".into(),
        }
    }

    fn holds(s: &[bool], id: Option<Id>) -> bool {
        id.is_some_and(|i| s[i])
    }

    /// `x ∈ S` or `¬x ∈ S`
    fn determined(&self, s: &[bool], x: Id) -> bool {
        s[x] || Universe::holds(s, self.neg_of(x))
    }

    fn neg_conj(&self, tag: Jump, s: &[bool], b: Id, c: Id) -> bool {
        let some = Universe::holds(s, self.neg_of(b)) || Universe::holds(s, self.neg_of(c));
        some && (!tag.guarded() || (self.determined(s, b) && self.determined(s, c)))
    }

    /// Whether `id` belongs to the jump of `s`.
    pub fn clause(&self, tag: Jump, s: &[bool], id: Id) -> bool {
        if tag != Jump::Af && self.has_fc[id] {
            return false;
        }
        match self.nodes[id] {
            Sentence::Eq(m, n) => m == n,
            Sentence::Tr(c) => s[c],
            Sentence::And(b, c) => s[b] && s[c],
            Sentence::Or(b, c) => {
                // as ¬(¬b ∧ ¬c)
                let (nb, nc) = (self.neg_of(b).unwrap(), self.neg_of(c).unwrap());
                self.neg_conj(tag, s, nb, nc)
            }
            Sentence::Fc(b, c) => Universe::holds(s, self.neg_of(b)) || (s[b] && s[c]),
            Sentence::Not(x) => self.neg_clause(tag, s, x),
            Sentence::Reserved => false,
        }
    }

    /// Whether `¬x` belongs to the jump of `s`, whether or not `¬x` is in
    /// the universe.
    pub fn neg_clause(&self, tag: Jump, s: &[bool], x: Id) -> bool {
        if tag != Jump::Af && self.has_fc[x] {
            return false;
        }
        match self.nodes[x] {
            Sentence::Eq(m, n) => m != n,
            Sentence::Tr(c) => Universe::holds(s, self.neg_of(c)),
            Sentence::Not(b) => s[b],
            Sentence::And(b, c) => self.neg_conj(tag, s, b, c),
            Sentence::Or(b, c) => {
                let (nb, nc) = (self.neg_of(b).unwrap(), self.neg_of(c).unwrap());
                Universe::holds(s, self.lookup(&Sentence::And(nb, nc)))
            }
            Sentence::Fc(b, c) => s[b] && Universe::holds(s, self.neg_of(c)),
            Sentence::Reserved => false,
        }
    }

    /// One application of the jump.
    pub fn jump(&self, tag: Jump, s: &[bool]) -> Vec<bool> {
        assert_eq!(s.len(), self.len(), "set over a different universe");
        self.ids().map(|id| self.clause(tag, s, id)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub jump: Jump,
    members: Vec<bool>,
    pub consistent: bool,
    pub complete: bool,
}

impl FixedPoint {
    pub fn contains(&self, id: Id) -> bool {
        self.members.get(id).copied().unwrap_or(false)
    }

    pub fn members(&self) -> Vec<Id> {
        self.members.iter().enumerate().filter(|(_, m)| **m).map(|(i, _)| i).collect()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.members
    }
}

/// `¬x ∈ S`, reading a negation outside the universe through its clause
fn neg_in(u: &Universe, tag: Jump, s: &[bool], x: Id) -> bool {
    match u.neg_of(x) {
        Some(n) => s[n],
        None => u.neg_clause(tag, s, x),
    }
}

fn consistent(u: &Universe, tag: Jump, s: &[bool]) -> bool {
    u.ids().all(|id| !(s[id] && neg_in(u, tag, s, id)))
}

/// Sentences outside the language of the jump are exempt.
fn complete(u: &Universe, tag: Jump, s: &[bool]) -> bool {
    u.ids()
        .filter(|id| u.get(*id) != Sentence::Reserved && (tag == Jump::Af || !u.uses_fc(*id)))
        .all(|id| s[id] || neg_in(u, tag, s, id))
}

/// Iterates `S ↦ seed ∪ jump(S)` from the seed and checks the result is a
/// fixed point of the jump itself.
pub fn lfp(u: &Universe, tag: Jump, seed: &[Id]) -> Result<FixedPoint, KfError> {
    let mut base = vec![false; u.len()];
    for id in seed {
        base[*id] = true;
    }
    let mut s = base.clone();
    loop {
        let mut next = u.jump(tag, &s);
        for (n, b) in next.iter_mut().zip(&base) {
            *n |= *b;
        }
        if next == s {
            break;
        }
        s = next;
    }
    let again = u.jump(tag, &s);
    let differ: Vec<Id> = u.ids().filter(|i| again[*i] != s[*i]).collect();
    if let Some(first) = differ.first() {
        return Err(KfError::NotAFixedPoint {
            count: differ.len(),
            first: u.print(*first),
        });
    }
    Ok(FixedPoint {
        jump: tag,
        consistent: consistent(u, tag, &s),
        complete: complete(u, tag, &s),
        members: s,
    })
}

/// Classical truth in the model whose truth predicate is `fp`.
pub fn classical_sat(u: &Universe, fp: &FixedPoint, id: Id) -> bool {
    match u.get(id) {
        Sentence::Eq(m, n) => m == n,
        Sentence::Tr(c) => fp.contains(c),
        Sentence::Not(a) => !classical_sat(u, fp, a),
        Sentence::And(a, b) => classical_sat(u, fp, a) && classical_sat(u, fp, b),
        Sentence::Or(a, b) => classical_sat(u, fp, a) || classical_sat(u, fp, b),
        Sentence::Fc(a, b) => !classical_sat(u, fp, a) || classical_sat(u, fp, b),
        Sentence::Reserved => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SentenceEntry {
    pub id: Id,
    pub form: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixpointDump {
    pub sentences: Vec<SentenceEntry>,
    #[serde(rename = "S")]
    pub members: Vec<Id>,
    pub jump: Jump,
    pub consistent: bool,
    pub complete: bool,
}

pub fn dump(u: &Universe, fp: &FixedPoint) -> FixpointDump {
    FixpointDump {
        sentences: u
            .ids()
            .map(|id| SentenceEntry {
                id,
                form: u.print(id),
            })
            .collect(),
        members: fp.members(),
        jump: fp.jump,
        consistent: fp.consistent,
        complete: fp.complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn liar_is_self_referential() {
        let mut u = Universe::new();
        let l = u.liar();
        let Sentence::Not(x) = u.get(l) else { panic!() };
        assert_eq!(u.get(x), Sentence::Tr(l));
        // ¬T⌜λ⌝ is λ itself
        assert_eq!(u.not(x), l);
        assert_eq!(u.liar(), l);
        assert_eq!(u.print(l), format!("not T({l})"));
    }

    #[test]
    fn equations_in_the_first_jump() {
        let mut u = Universe::new();
        let t = u.eq(0, 0);
        let f = u.eq(0, 1);
        let nf = u.not(f);
        let j = u.jump(Jump::Sk, &vec![false; u.len()]);
        assert!(j[t] && j[nf] && !j[f]);
    }

    #[test]
    fn liar_clause_reads_its_negation() {
        let mut u = Universe::new();
        let l = u.liar();
        let nl = u.neg_of(l).unwrap();
        for bits in 0..(1u32 << u.len()) {
            let s: Vec<bool> = (0..u.len()).map(|i| bits >> i & 1 == 1).collect();
            assert_eq!(u.jump(Jump::Sk, &s)[l], s[nl]);
        }
    }

    #[test]
    fn weak_kleene_guard() {
        let mut u = Universe::with(1, false);
        let t0 = u.teller(0).unwrap();
        let z = u.eq(0, 1);
        let conj = u.and(t0, z);
        let neg = u.not(conj);
        let fp = lfp(&u, Jump::Sk, &[]).unwrap();
        assert!(fp.contains(neg));
        let fp = lfp(&u, Jump::Wk, &[]).unwrap();
        assert!(!fp.contains(neg));
        let nt0 = u.neg_of(t0).unwrap();
        assert!(lfp(&u, Jump::Wk, &[nt0]).unwrap().contains(neg));
    }

    #[test]
    fn teller_seed_membership() {
        let u = Universe::with(1, false);
        let t0 = u.teller(0).unwrap();
        let nt0 = u.neg_of(t0).unwrap();
        let fp = lfp(&u, Jump::Sk, &[t0]).unwrap();
        assert!(fp.contains(t0) && !fp.contains(nt0));
        assert!(classical_sat(&u, &fp, u.lookup(&Sentence::Tr(t0)).unwrap()));
        let both = lfp(&u, Jump::Sk, &[t0, nt0]).unwrap();
        assert!(!both.consistent && both.complete);
        let none = lfp(&u, Jump::Sk, &[]).unwrap();
        assert!(none.consistent && !none.complete);
    }

    #[test]
    fn illegal_seed() {
        let mut u = Universe::new();
        let f = u.eq(0, 1);
        assert!(matches!(lfp(&u, Jump::Sk, &[f]), Err(KfError::NotAFixedPoint { .. })));
    }

    #[test]
    fn fc_sentences_only_jump_under_af() {
        let mut u = Universe::new();
        let z = u.eq(0, 1);
        let o = u.eq(0, 0);
        let c = u.fc(z, o);
        assert!(lfp(&u, Jump::Af, &[]).unwrap().contains(c));
        assert!(!lfp(&u, Jump::Wk, &[]).unwrap().contains(c));
        let t = u.tr(c);
        // T⌜…⌝ is an ordinary sentence, whatever it names
        assert!(!u.uses_fc(t));
    }

    #[test]
    fn liar_in_least_fixed_points() {
        let mut u = Universe::new();
        let l = u.liar();
        let nl = u.neg_of(l).unwrap();
        for tag in Jump::ALL {
            let fp = lfp(&u, tag, &[]).unwrap();
            assert!(fp.consistent && !fp.contains(l) && !fp.contains(nl));
            assert!(classical_sat(&u, &fp, l));
        }
        let both = lfp(&u, Jump::Sk, &[l, nl]).unwrap();
        let tl = u.lookup(&Sentence::Tr(l)).unwrap();
        assert!(both.contains(tl) && both.complete && !classical_sat(&u, &both, l));
    }

    #[test]
    fn completeness_reads_missing_negations() {
        let u = Universe::with(1, false);
        let t0 = u.teller(0).unwrap();
        // ¬¬τ0 is not in the universe but τ0 ∈ S settles ¬τ0 negatively
        assert!(lfp(&u, Jump::Sk, &[t0]).unwrap().complete);
    }

    #[test]
    fn all_teller_seeds_are_fixed_points() {
        let u = Universe::with(2, false);
        let seeds = teller_seeds(2);
        assert_eq!(seeds.len(), 16);
        for seed in &seeds {
            let fp = lfp(&u, Jump::Sk, &resolve_seed(&u, seed).unwrap()).unwrap();
            for lit in seed {
                assert!(fp.contains(lit.resolve(&u).unwrap()));
            }
        }
    }

    #[test]
    fn dump_shape() {
        let mut u = Universe::new();
        u.eq(0, 0);
        let fp = lfp(&u, Jump::Sk, &[]).unwrap();
        let v = serde_json::to_value(dump(&u, &fp)).unwrap();
        assert_eq!(v["S"], serde_json::json!([0]));
        assert_eq!(v["jump"], "sk");
        assert_eq!(v["sentences"][0]["form"], "0=0");
    }
}
