//! Four truth values, the evaluation schemata, plain Kripke models and the
//! decision procedure for the internal logics over idiosyncratic frames.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::syntax::Formula;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TruthValue {
    Zero,
    One,
    /// neither true nor false
    N,
    /// both true and false
    B,
}

use TruthValue::{One, Zero, B, N};

impl TruthValue {
    /// Canonical enumeration order `n < b < 0 < 1`.
    pub const ALL: [TruthValue; 4] = [N, B, Zero, One];

    pub fn designated(self) -> bool {
        matches!(self, One | B)
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Zero | One)
    }

    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            One
        } else {
            Zero
        }
    }

    pub fn neg(self) -> TruthValue {
        match self {
            Zero => One,
            One => Zero,
            v => v,
        }
    }

    fn rank(self) -> u8 {
        match self {
            N => 0,
            B => 1,
            Zero => 2,
            One => 3,
        }
    }

    /// Meet in the logical order: 0 bottom, 1 top, n and b incomparable.
    pub fn inf(self, other: TruthValue) -> TruthValue {
        match (self, other) {
            (a, b) if a == b => a,
            (Zero, _) | (_, Zero) => Zero,
            (One, x) | (x, One) => x,
            _ => Zero,
        }
    }

    /// Join in the logical order.
    pub fn sup(self, other: TruthValue) -> TruthValue {
        match (self, other) {
            (a, b) if a == b => a,
            (One, _) | (_, One) => One,
            (Zero, x) | (x, Zero) => x,
            _ => One,
        }
    }

    fn wk_rank(self) -> u8 {
        match self {
            N => 0,
            Zero => 1,
            One => 2,
            B => panic!("b lies outside the weak Kleene order"),
        }
    }

    /// Minimum in the linear order `n ⋞ 0 ⋞ 1`.
    pub fn wk_min(self, other: TruthValue) -> TruthValue {
        if self.wk_rank() <= other.wk_rank() {
            self
        } else {
            other
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Zero => "0",
            One => "1",
            N => "n",
            B => "b",
        }
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for canonical enumeration (`n < b < 0 < 1`).
impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for TruthValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(Zero),
            "1" => Ok(One),
            "n" => Ok(N),
            "b" => Ok(B),
            _ => Err(format!("unknown truth value {s:?}")),
        }
    }
}

/// `0`/`1` serialize as numbers, `n`/`b` as strings.
impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Zero => s.serialize_u8(0),
            One => s.serialize_u8(1),
            v => s.serialize_str(v.symbol()),
        }
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => match n.as_u64() {
                Some(0) => Ok(Zero),
                Some(1) => Ok(One),
                _ => Err(serde::de::Error::custom(format!("bad truth value {n}"))),
            },
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("bad truth value {other}"))),
        }
    }
}

/// Which of the two three-valued ranges a world of a symmetric model uses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// values {0, 1, n}
    Consistent,
    /// values {0, 1, b}
    Complete,
}

impl Polarity {
    pub const BOTH: [Polarity; 2] = [Polarity::Consistent, Polarity::Complete];
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Fde,
    K3,
    Lp,
    Ks3,
    B3,
    F3,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Fde,
        Scheme::K3,
        Scheme::Lp,
        Scheme::Ks3,
        Scheme::B3,
        Scheme::F3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Fde => "fde",
            Scheme::K3 => "k3",
            Scheme::Lp => "lp",
            Scheme::Ks3 => "ks3",
            Scheme::B3 => "b3",
            Scheme::F3 => "f3",
        }
    }

    /// Weak Kleene evaluation (linear order, infectious `n`).
    pub fn is_weak(self) -> bool {
        matches!(self, Scheme::B3 | Scheme::F3)
    }

    /// Polarities a world may take; `None` for schemes with a fixed range.
    pub fn polarities(self) -> Vec<Option<Polarity>> {
        match self {
            Scheme::Ks3 => Polarity::BOTH.iter().map(|p| Some(*p)).collect(),
            _ => vec![None],
        }
    }

    /// Legal values at a world, in canonical order.
    pub fn values(self, polarity: Option<Polarity>) -> &'static [TruthValue] {
        match (self, polarity) {
            (Scheme::Fde, _) => &[N, B, Zero, One],
            (Scheme::Lp, _) | (Scheme::Ks3, Some(Polarity::Complete)) => &[B, Zero, One],
            _ => &[N, Zero, One],
        }
    }

    pub fn allows(self, v: TruthValue, polarity: Option<Polarity>) -> bool {
        self.values(polarity).contains(&v)
    }

    pub fn and(self, a: TruthValue, b: TruthValue) -> TruthValue {
        if self.is_weak() {
            a.wk_min(b)
        } else {
            a.inf(b)
        }
    }

    pub fn or(self, a: TruthValue, b: TruthValue) -> TruthValue {
        if self.is_weak() {
            self.and(a.neg(), b.neg()).neg()
        } else {
            a.sup(b)
        }
    }

    /// The f3 conditional; callers must reject it for other schemes.
    pub fn fc(self, a: TruthValue, b: TruthValue) -> TruthValue {
        if a == Zero || a.wk_min(b) == One {
            One
        } else if a == One && b == Zero {
            Zero
        } else {
            N
        }
    }

    /// Box over the values at the successors; top when there are none.
    pub fn box_inf<I: IntoIterator<Item = TruthValue>>(self, vals: I) -> TruthValue {
        vals.into_iter().fold(One, |acc, v| self.and(acc, v))
    }

    pub fn check_formula(self, f: &Formula) -> Result<(), EvalError> {
        if self != Scheme::F3 && f.uses_fc() {
            return Err(EvalError::IllegalConnective { scheme: self });
        }
        Ok(())
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown scheme {s:?}"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("value {value} for p{atom} is illegal under {scheme}")]
    IllegalValueForScheme {
        atom: u32,
        value: TruthValue,
        scheme: Scheme,
    },
    #[error("`->>` is only available under f3, not {scheme}")]
    IllegalConnective { scheme: Scheme },
    #[error("p{0} has no value")]
    MissingAtom(u32),
    #[error("world {0} does not exist")]
    NoSuchWorld(usize),
}

pub type Valuation = BTreeMap<u32, TruthValue>;

/// Serializes atom-indexed maps as `{"p0": …}` in atom order.
pub mod atom_map {
    use super::*;
    use serde::ser::SerializeMap;

    pub fn serialize<S: Serializer, V: Serialize>(
        m: &BTreeMap<u32, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(&format!("p{k}"), v)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        d: D,
    ) -> Result<BTreeMap<u32, V>, D::Error> {
        let raw = BTreeMap::<String, V>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.strip_prefix('p')
                    .and_then(|n| n.parse().ok())
                    .map(|n| (n, v))
                    .ok_or_else(|| serde::de::Error::custom(format!("bad atom name {k:?}")))
            })
            .collect()
    }
}

/// Value of a formula at a single world that sees only itself, with atom
/// values read from `val` (indexed by atom). The formula must be legal for
/// the scheme.
pub fn value_at_reflexive(s: Scheme, f: &Formula, val: &[TruthValue]) -> TruthValue {
    match f {
        Formula::Atom(j) => val[*j as usize],
        Formula::Top => One,
        Formula::Bot => Zero,
        Formula::Not(a) => value_at_reflexive(s, a, val).neg(),
        Formula::Box(a) => value_at_reflexive(s, a, val),
        Formula::And(a, b) => s.and(value_at_reflexive(s, a, val), value_at_reflexive(s, b, val)),
        Formula::Or(a, b) => s.or(value_at_reflexive(s, a, val), value_at_reflexive(s, b, val)),
        Formula::Fc(a, b) => s.fc(value_at_reflexive(s, a, val), value_at_reflexive(s, b, val)),
    }
}

/// A model `(Z, R, V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlainModel {
    pub successors: Vec<Vec<usize>>,
    #[serde(with = "valuations")]
    pub valuation: Vec<Valuation>,
    /// Per-world range for ks3 models; ignored otherwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polarity: Vec<Polarity>,
}

mod valuations {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "atom_map")] Valuation);

    pub fn serialize<S: Serializer>(v: &[Valuation], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| W(x.clone())))
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Valuation>, D::Error> {
        Ok(Vec::<W>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

impl PlainModel {
    /// One world that sees itself.
    pub fn idiosyncratic(valuation: Valuation) -> PlainModel {
        PlainModel {
            successors: vec![vec![0]],
            valuation: vec![valuation],
            polarity: vec![],
        }
    }

    pub fn worlds(&self) -> usize {
        self.successors.len()
    }

    pub fn check(&self, s: Scheme) -> Result<(), EvalError> {
        for (w, val) in self.valuation.iter().enumerate() {
            let pol = if s == Scheme::Ks3 {
                Some(*self.polarity.get(w).unwrap_or(&Polarity::Consistent))
            } else {
                None
            };
            for (atom, v) in val {
                if !s.allows(*v, pol) {
                    return Err(EvalError::IllegalValueForScheme {
                        atom: *atom,
                        value: *v,
                        scheme: s,
                    });
                }
            }
        }
        for succ in &self.successors {
            if let Some(bad) = succ.iter().find(|x| **x >= self.worlds()) {
                return Err(EvalError::NoSuchWorld(*bad));
            }
        }
        Ok(())
    }

    fn value(&self, world: usize, f: &Formula, s: Scheme) -> Result<TruthValue, EvalError> {
        Ok(match f {
            Formula::Atom(j) => *self.valuation[world]
                .get(j)
                .ok_or(EvalError::MissingAtom(*j))?,
            Formula::Top => One,
            Formula::Bot => Zero,
            Formula::Not(a) => self.value(world, a, s)?.neg(),
            Formula::Box(a) => {
                let mut acc = One;
                for &v in &self.successors[world] {
                    acc = s.and(acc, self.value(v, a, s)?);
                }
                acc
            }
            Formula::And(a, b) => s.and(self.value(world, a, s)?, self.value(world, b, s)?),
            Formula::Or(a, b) => s.or(self.value(world, a, s)?, self.value(world, b, s)?),
            Formula::Fc(a, b) => s.fc(self.value(world, a, s)?, self.value(world, b, s)?),
        })
    }
}

/// `⟦f⟧` at `world`.
pub fn eval(m: &PlainModel, world: usize, f: &Formula, s: Scheme) -> Result<TruthValue, EvalError> {
    s.check_formula(f)?;
    m.check(s)?;
    if world >= m.worlds() {
        return Err(EvalError::NoSuchWorld(world));
    }
    m.value(world, f, s)
}

/// Calls `visit` on every legal valuation of `atoms` at one world, in
/// canonical order; stops early when `visit` returns `false`. The slice
/// handed to `visit` is indexed by atom.
pub fn for_each_valuation<F>(s: Scheme, atoms: &[u32], mut visit: F)
where
    F: FnMut(&[TruthValue], Option<Polarity>) -> bool,
{
    let width = atoms.iter().max().map_or(0, |m| *m as usize + 1);
    for pol in s.polarities() {
        let vals = s.values(pol);
        let mut digits = vec![0usize; atoms.len()];
        let mut val = vec![Zero; width];
        loop {
            for (k, a) in atoms.iter().enumerate() {
                val[*a as usize] = vals[digits[k]];
            }
            // classical valuations belong to both ranges; visit them once
            let repeat = pol == Some(Polarity::Complete)
                && atoms.iter().all(|a| val[*a as usize].is_classical());
            if !repeat && !visit(&val, pol) {
                return;
            }
            if !increment(&mut digits, vals.len()) {
                break;
            }
        }
    }
}

/// Lexicographic odometer, most significant digit first.
pub(crate) fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn to_valuation(atoms: &[u32], val: &[TruthValue]) -> Valuation {
    atoms.iter().map(|a| (*a, val[*a as usize])).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Consequence {
    Holds,
    Fails {
        #[serde(with = "atom_map")]
        witness: Valuation,
        #[serde(skip_serializing_if = "Option::is_none")]
        polarity: Option<Polarity>,
    },
}

impl Consequence {
    pub fn holds(&self) -> bool {
        matches!(self, Consequence::Holds)
    }
}

/// Decides `Γ ⊨ Δ` over idiosyncratic frames: every valuation designating
/// all of Γ designates some member of Δ.
pub fn internal_consequence(
    gamma: &BTreeSet<Formula>,
    delta: &BTreeSet<Formula>,
    s: Scheme,
) -> Result<Consequence, EvalError> {
    let mut atoms = BTreeSet::new();
    for f in gamma.iter().chain(delta) {
        s.check_formula(f)?;
        f.collect_props(&mut atoms);
    }
    let atoms: Vec<u32> = atoms.into_iter().collect();
    let mut result = Consequence::Holds;
    for_each_valuation(s, &atoms, |val, pol| {
        let premises = gamma.iter().all(|g| value_at_reflexive(s, g, val).designated());
        if premises && !delta.iter().any(|d| value_at_reflexive(s, d, val).designated()) {
            result = Consequence::Fails {
                witness: to_valuation(&atoms, val),
                polarity: pol,
            };
            return false;
        }
        true
    });
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(with = "atom_map")]
    pub v: Valuation,
    pub value: TruthValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub atoms: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl TruthTable {
    pub fn lookup(&self, v: &Valuation) -> Option<TruthValue> {
        self.rows.iter().find(|r| &r.v == v).map(|r| r.value)
    }
}

/// Values of `f` under every legal valuation of its atoms. Boxes are read
/// at a world that sees only itself.
pub fn eval_truth_table(f: &Formula, s: Scheme) -> Result<TruthTable, EvalError> {
    s.check_formula(f)?;
    let atoms: Vec<u32> = f.props().into_iter().collect();
    let mut rows = Vec::new();
    for_each_valuation(s, &atoms, |val, _| {
        rows.push(TableRow {
            v: to_valuation(&atoms, val),
            value: value_at_reflexive(s, f, val),
        });
        true
    });
    Ok(TruthTable {
        atoms: atoms.iter().map(|a| format!("p{a}")).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::p;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn set(xs: &[&str]) -> BTreeSet<Formula> {
        xs.iter().map(|x| f(x)).collect()
    }

    fn at(s: Scheme, g: &str, vals: &[(u32, TruthValue)]) -> TruthValue {
        let m = PlainModel::idiosyncratic(vals.iter().copied().collect());
        eval(&m, 0, &f(g), s).unwrap()
    }

    #[test]
    fn lattice_meets_and_joins() {
        assert_eq!(N.inf(B), Zero);
        assert_eq!(N.sup(B), One);
        assert_eq!(One.inf(B), B);
        assert_eq!(Zero.sup(N), N);
        assert_eq!(N.wk_min(Zero), N);
        assert_eq!(Zero.wk_min(One), Zero);
    }

    #[test]
    fn clause_examples() {
        assert_eq!(at(Scheme::Fde, "p0 /\\ p1", &[(0, N), (1, B)]), Zero);
        assert_eq!(at(Scheme::B3, "p0 \\/ p1", &[(0, One), (1, N)]), N);
        assert_eq!(at(Scheme::K3, "p0 \\/ p1", &[(0, One), (1, N)]), One);
        assert_eq!(at(Scheme::F3, "p0 ->> p1", &[(0, Zero), (1, N)]), One);
        assert_eq!(at(Scheme::F3, "p0 ->> p1", &[(0, One), (1, Zero)]), Zero);
        assert_eq!(at(Scheme::F3, "p0 ->> p1", &[(0, N), (1, One)]), N);
        assert_eq!(at(Scheme::Lp, "[]p0", &[(0, B)]), B);
    }

    #[test]
    fn box_over_successors() {
        let m = PlainModel {
            successors: vec![vec![1, 2], vec![], vec![]],
            valuation: vec![
                [(0, N)].into(),
                [(0, One)].into(),
                [(0, B)].into(),
            ],
            polarity: vec![],
        };
        assert_eq!(eval(&m, 0, &f("[]p0"), Scheme::Fde).unwrap(), B);
        // no successors: top
        assert_eq!(eval(&m, 1, &f("[]F"), Scheme::Fde).unwrap(), One);
        let w = PlainModel {
            successors: vec![vec![1, 2], vec![], vec![]],
            valuation: vec![[(0, One)].into(), [(0, Zero)].into(), [(0, N)].into()],
            polarity: vec![],
        };
        assert_eq!(eval(&w, 0, &f("[]p0"), Scheme::B3).unwrap(), N);
        assert_eq!(eval(&w, 0, &f("[]p0"), Scheme::K3).unwrap(), Zero);
    }

    #[test]
    fn illegal_inputs() {
        let m = PlainModel::idiosyncratic([(0, B)].into());
        assert!(matches!(
            eval(&m, 0, &p(0), Scheme::K3),
            Err(EvalError::IllegalValueForScheme { .. })
        ));
        let m = PlainModel::idiosyncratic([(0, One)].into());
        assert_eq!(
            eval(&m, 0, &f("p0 ->> p0"), Scheme::B3),
            Err(EvalError::IllegalConnective { scheme: Scheme::B3 })
        );
    }

    #[test]
    fn consequence_examples() {
        assert!(internal_consequence(&set(&["p0"]), &set(&["p0"]), Scheme::Fde).unwrap().holds());
        assert!(internal_consequence(&set(&["p0", "~p0"]), &set(&[]), Scheme::K3).unwrap().holds());
        assert!(internal_consequence(&set(&[]), &set(&["p0 \\/ ~p0"]), Scheme::Lp).unwrap().holds());
        assert_eq!(
            internal_consequence(&set(&[]), &set(&["p0 \\/ ~p0"]), Scheme::Fde).unwrap(),
            Consequence::Fails {
                witness: [(0, N)].into(),
                polarity: None
            }
        );
        assert!(internal_consequence(&set(&["p0", "~p0"]), &set(&["p1", "~p1"]), Scheme::Ks3)
            .unwrap()
            .holds());
        // fails in fde with p0=b, p1=n
        assert!(!internal_consequence(&set(&["p0", "~p0"]), &set(&["p1", "~p1"]), Scheme::Fde)
            .unwrap()
            .holds());
    }

    #[test]
    fn tables() {
        let t = eval_truth_table(&f("~p0"), Scheme::B3).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.lookup(&[(0, One)].into()), Some(Zero));
        assert_eq!(t.lookup(&[(0, Zero)].into()), Some(One));
        assert_eq!(t.lookup(&[(0, N)].into()), Some(N));
        let t = eval_truth_table(&f("p0 ->> p0"), Scheme::F3).unwrap();
        assert_eq!(t.lookup(&[(0, One)].into()), Some(One));
        assert_eq!(t.lookup(&[(0, Zero)].into()), Some(One));
        assert_eq!(t.lookup(&[(0, N)].into()), Some(N));
        // ks3 enumerates both ranges without repeating classical rows
        let t = eval_truth_table(&f("p0"), Scheme::Ks3).unwrap();
        assert_eq!(t.rows.len(), 4);
        let json = serde_json::to_string(&eval_truth_table(&f("p0"), Scheme::Lp).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"atoms":["p0"],"rows":[{"v":{"p0":"b"},"value":"b"},{"v":{"p0":0},"value":0},{"v":{"p0":1},"value":1}]}"#
        );
    }
}
