//! Sequent calculi for the six base logics, with transparent box rules
//! (`S_□`) or the K-style black-box rules (`S_■`): derivation checking,
//! proof search, and semantic cross-checks.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manyvalued::Scheme;
use crate::syntax::{Formula, Sequent};

mod random;
mod search;
mod semantics;

pub use random::{random_derivation, DerivationGenerator, GeneratorConfig};
pub use search::{prove, ProofResult, SearchOptions};
pub use semantics::{
    blackbox_refute, crosscheck_adequacy, semantically_valid, AdequacyReport, TreeCountermodel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    #[serde(rename = "FDE")]
    Fde,
    K3,
    #[serde(rename = "LP")]
    Lp,
    #[serde(rename = "KS3")]
    Ks3,
    B3,
    F3,
}

impl Base {
    pub const ALL: [Base; 6] = [Base::Fde, Base::K3, Base::Lp, Base::Ks3, Base::B3, Base::F3];

    pub fn scheme(self) -> Scheme {
        match self {
            Base::Fde => Scheme::Fde,
            Base::K3 => Scheme::K3,
            Base::Lp => Scheme::Lp,
            Base::Ks3 => Scheme::Ks3,
            Base::B3 => Scheme::B3,
            Base::F3 => Scheme::F3,
        }
    }

    fn weak(self) -> bool {
        matches!(self, Base::B3 | Base::F3)
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::Fde => "FDE",
            Base::K3 => "K3",
            Base::Lp => "LP",
            Base::Ks3 => "KS3",
            Base::B3 => "B3",
            Base::F3 => "F3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modal {
    None,
    Box,
    Blackbox,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CalculusId {
    pub base: Base,
    pub modal: Modal,
}

impl CalculusId {
    pub fn new(base: Base, modal: Modal) -> Self {
        CalculusId { base, modal }
    }

    pub fn boxed(base: Base) -> Self {
        CalculusId::new(base, Modal::Box)
    }

    pub fn blackbox(base: Base) -> Self {
        CalculusId::new(base, Modal::Blackbox)
    }

    pub fn scheme(self) -> Scheme {
        self.base.scheme()
    }

    /// Rules of the calculus; axioms first, then unary, then binary rules.
    pub fn rules(self) -> Vec<Rule> {
        use Rule::*;
        let mut rules = vec![Ref, Bot, Top];
        if !self.base.weak() {
            rules.extend([NegTop, NegBot]);
        }
        if self.base == Base::Ks3 {
            rules.push(Sym);
        }
        if self.base.weak() {
            rules.extend([NegL, NegR, AndL, OrR]);
            if self.base == Base::F3 {
                rules.extend([FcR1, FcR2]);
            }
        } else {
            rules.extend([DnL, DnR, NegAndR, AndL, NegOrL, OrR]);
            match self.base {
                Base::K3 => rules.push(NegL),
                Base::Lp => rules.push(NegR),
                _ => {}
            }
        }
        match self.modal {
            Modal::Box => rules.extend([BoxL, BoxR, NegBoxL, NegBoxR]),
            Modal::Blackbox => rules.extend([BlackL, BlackR]),
            Modal::None => {}
        }
        if self.base.weak() {
            rules.extend([AndR, OrL]);
        } else {
            rules.extend([NegAndL, AndR, NegOrR, OrL]);
        }
        if self.base == Base::F3 {
            rules.push(FcL);
        }
        rules.push(Cut);
        rules
    }

    pub fn has_rule(self, r: Rule) -> bool {
        self.rules().contains(&r)
    }

    /// Whether `f` belongs to the calculus's language.
    pub fn admits(self, f: &Formula) -> bool {
        (self.modal != Modal::None || f.is_box_free()) && (self.base == Base::F3 || !f.uses_fc())
    }

    /// The first formula of `s` outside the language, if any.
    pub fn admits_sequent(self, s: &Sequent) -> Option<Formula> {
        s.formulas().find(|f| !self.admits(f)).cloned()
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.base.name())?;
        match self.modal {
            Modal::None => Ok(()),
            Modal::Box => f.write_str("_box"),
            Modal::Blackbox => f.write_str("_blackbox"),
        }
    }
}

impl FromStr for CalculusId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, modal) = match s.split_once('_') {
            None => (s, Modal::None),
            Some((b, "box")) => (b, Modal::Box),
            Some((b, "blackbox")) => (b, Modal::Blackbox),
            Some((_, m)) => return Err(format!("unknown modal suffix {m:?} (expected box or blackbox)")),
        };
        let base = Base::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(base))
            .ok_or_else(|| format!("unknown calculus {base:?}"))?;
        Ok(CalculusId { base, modal })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "ref")]
    Ref,
    #[serde(rename = "cut")]
    Cut,
    #[serde(rename = "⊥")]
    Bot,
    #[serde(rename = "⊤")]
    Top,
    /// `Γ,¬⊤ ⇒ Δ`
    #[serde(rename = "¬⊤")]
    NegTop,
    /// `Γ ⇒ ¬⊥,Δ`
    #[serde(rename = "¬⊥")]
    NegBot,
    #[serde(rename = "sym")]
    Sym,
    #[serde(rename = "dn-l")]
    DnL,
    #[serde(rename = "dn-r")]
    DnR,
    #[serde(rename = "¬∧l")]
    NegAndL,
    #[serde(rename = "¬∧r")]
    NegAndR,
    #[serde(rename = "∧l")]
    AndL,
    #[serde(rename = "∧r")]
    AndR,
    #[serde(rename = "¬∨l")]
    NegOrL,
    #[serde(rename = "¬∨r")]
    NegOrR,
    #[serde(rename = "∨l")]
    OrL,
    #[serde(rename = "∨r")]
    OrR,
    #[serde(rename = "¬l")]
    NegL,
    #[serde(rename = "¬r")]
    NegR,
    #[serde(rename = "↠l")]
    FcL,
    #[serde(rename = "↠r1")]
    FcR1,
    #[serde(rename = "↠r2")]
    FcR2,
    #[serde(rename = "□l")]
    BoxL,
    #[serde(rename = "□r")]
    BoxR,
    #[serde(rename = "¬□l")]
    NegBoxL,
    #[serde(rename = "¬□r")]
    NegBoxR,
    #[serde(rename = "■l")]
    BlackL,
    #[serde(rename = "■r")]
    BlackR,
}

impl Rule {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }

    pub fn is_axiom(self) -> bool {
        matches!(
            self,
            Rule::Ref | Rule::Bot | Rule::Top | Rule::NegTop | Rule::NegBot | Rule::Sym
        )
    }

    /// Rules with a principal formula in a context `Γ ⇒ Δ`.
    fn principal_side(self) -> Option<Side> {
        use Rule::*;
        match self {
            DnL | NegAndL | AndL | NegOrL | OrL | NegL | FcL | BoxL | NegBoxL => Some(Side::Left),
            DnR | NegAndR | AndR | NegOrR | OrR | NegR | FcR1 | FcR2 | BoxR | NegBoxR => {
                Some(Side::Right)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Rule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_owned()))
            .map_err(|_| format!("unknown rule {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Formulas a rule adds to one premise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Added {
    ant: Vec<Formula>,
    suc: Vec<Formula>,
}

fn left(f: Formula) -> Added {
    Added { ant: vec![f], suc: vec![] }
}

fn right(f: Formula) -> Added {
    Added { ant: vec![], suc: vec![f] }
}

/// Ways `rule` can decompose principal `pi`: each alternative lists the
/// additions of every premise.
fn decompositions(rule: Rule, pi: &Formula) -> Vec<Vec<Added>> {
    use Formula as F;
    use Rule::*;
    let n = |f: &Formula| Formula::not(f.clone());
    match (rule, pi) {
        (DnL, F::Not(a)) => match &**a {
            F::Not(b) => vec![vec![left((**b).clone())]],
            _ => vec![],
        },
        (DnR, F::Not(a)) => match &**a {
            F::Not(b) => vec![vec![right((**b).clone())]],
            _ => vec![],
        },
        (NegAndL, F::Not(a)) => match &**a {
            F::And(b, c) => vec![vec![left(n(b)), left(n(c))]],
            _ => vec![],
        },
        (NegAndR, F::Not(a)) => match &**a {
            F::And(b, c) => vec![vec![right(n(b))], vec![right(n(c))]],
            _ => vec![],
        },
        (NegOrL, F::Not(a)) => match &**a {
            F::Or(b, c) => vec![vec![left(n(b))], vec![left(n(c))]],
            _ => vec![],
        },
        (NegOrR, F::Not(a)) => match &**a {
            F::Or(b, c) => vec![vec![right(n(b)), right(n(c))]],
            _ => vec![],
        },
        (NegBoxL, F::Not(a)) => match &**a {
            F::Box(b) => vec![vec![left(n(b))]],
            _ => vec![],
        },
        (NegBoxR, F::Not(a)) => match &**a {
            F::Box(b) => vec![vec![right(n(b))]],
            _ => vec![],
        },
        (NegL, F::Not(a)) => vec![vec![right((**a).clone())]],
        (NegR, F::Not(a)) => vec![vec![left((**a).clone())]],
        (AndL, F::And(a, b)) => vec![vec![left((**a).clone())], vec![left((**b).clone())]],
        (AndR, F::And(a, b)) => vec![vec![right((**a).clone()), right((**b).clone())]],
        (OrL, F::Or(a, b)) => vec![vec![left((**a).clone()), left((**b).clone())]],
        (OrR, F::Or(a, b)) => vec![vec![right((**a).clone())], vec![right((**b).clone())]],
        (FcL, F::Fc(a, b)) => vec![vec![right((**a).clone()), left((**b).clone())]],
        (FcR1, F::Fc(a, _)) => vec![vec![right(n(a))]],
        (FcR2, F::Fc(a, b)) => vec![vec![Added {
            ant: vec![(**a).clone()],
            suc: vec![(**b).clone()],
        }]],
        (BoxL, F::Box(a)) => vec![vec![left((**a).clone())]],
        (BoxR, F::Box(a)) => vec![vec![right((**a).clone())]],
        _ => vec![],
    }
}

/// Atoms that are classical whenever `f` takes a classical value under the
/// weak Kleene schemes: all atoms, except those only in the consequent of
/// `↠`.
pub fn determined_props(f: &Formula) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    fn go(f: &Formula, out: &mut BTreeSet<u32>) {
        match f {
            Formula::Atom(j) => {
                out.insert(*j);
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(a) | Formula::Box(a) => go(a, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::Fc(a, _) => go(a, out),
        }
    }
    go(f, &mut out);
    out
}

/// Side condition of the weak Kleene rules: the atoms of the new formulas
/// must already be fixed by the antecedent.
fn side_condition(c: CalculusId, rule: Rule, pi: &Formula, ant: &BTreeSet<Formula>) -> Result<(), String> {
    if !c.base.weak() {
        return Ok(());
    }
    let needed = match (rule, pi) {
        (Rule::NegR, Formula::Not(a)) => a.props(),
        (Rule::OrR, Formula::Or(..)) | (Rule::FcR2, Formula::Fc(..)) => pi.props(),
        _ => return Ok(()),
    };
    let have: BTreeSet<u32> = ant.iter().flat_map(determined_props).collect();
    if needed.is_subset(&have) {
        Ok(())
    } else {
        let show = |s: &BTreeSet<u32>| {
            s.iter().map(|j| format!("p{j}")).collect::<Vec<_>>().join(",")
        };
        Err(format!(
            "side condition fails: Prop {{{}}} not within the antecedent's {{{}}}",
            show(&needed),
            show(&have)
        ))
    }
}

fn axiom_holds(c: CalculusId, rule: Rule, s: &Sequent) -> bool {
    let has_l = |f: &Formula| s.ant.contains(f);
    let has_r = |f: &Formula| s.suc.contains(f);
    match rule {
        Rule::Ref => s.ant.iter().any(|f| {
            has_r(f)
                && match c.modal {
                    Modal::Blackbox => true,
                    _ if c.base.weak() => matches!(f, Formula::Atom(_)),
                    _ => f.is_literal(),
                }
        }),
        Rule::Bot => has_l(&Formula::Bot),
        Rule::Top => has_r(&Formula::Top),
        Rule::NegTop => has_l(&Formula::not(Formula::Top)),
        Rule::NegBot => has_r(&Formula::not(Formula::Bot)),
        Rule::Sym => {
            s.ant.iter().any(|f| has_l(&Formula::not(f.clone())))
                && s.suc.iter().any(|f| has_r(&Formula::not(f.clone())))
        }
        _ => false,
    }
}

/// `premise = context + added`, where the context is the conclusion with or
/// without the principal formula.
fn premise_of(conclusion: &Sequent, principal: Option<(Side, &Formula)>, keep: bool, add: &Added) -> Sequent {
    let mut s = conclusion.clone();
    if let (false, Some((side, pi))) = (keep, principal) {
        match side {
            Side::Left => s.ant.remove(pi),
            Side::Right => s.suc.remove(pi),
        };
    }
    s.ant.extend(add.ant.iter().cloned());
    s.suc.extend(add.suc.iter().cloned());
    s
}

/// Premises of every instance of `rule` with conclusion `s` (both context
/// variants), paired with the principal formula. Side conditions are checked
/// separately.
fn backward_instances(rule: Rule, s: &Sequent, keep_only: bool) -> Vec<(Formula, Vec<Sequent>)> {
    let Some(side) = rule.principal_side() else {
        return vec![];
    };
    let candidates = match side {
        Side::Left => &s.ant,
        Side::Right => &s.suc,
    };
    let mut out = Vec::new();
    for pi in candidates {
        for alt in decompositions(rule, pi) {
            for keep in [true, false] {
                if keep_only && !keep {
                    continue;
                }
                let prems = alt.iter().map(|a| premise_of(s, Some((side, pi)), keep, a)).collect();
                out.push((pi.clone(), prems));
            }
        }
    }
    out
}

fn boxed_parts(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Box(a) => Some(a),
        _ => None,
    }
}

fn neg_boxed_parts(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => boxed_parts(a),
        _ => None,
    }
}

/// The unique premise of a black-box rule with conclusion `s` and principal
/// `pi`, if `s` has exactly the printed shape.
fn blackbox_premise(rule: Rule, s: &Sequent, pi: &Formula) -> Option<Sequent> {
    let neg = |f: &Formula| Formula::not(f.clone());
    match rule {
        Rule::BlackL => {
            let phi = neg_boxed_parts(pi)?;
            if !s.ant.contains(pi) {
                return None;
            }
            let mut ant = BTreeSet::new();
            for f in s.ant.iter().filter(|f| *f != pi) {
                ant.insert(boxed_parts(f)?.clone());
            }
            ant.insert(neg(phi));
            let suc = s
                .suc
                .iter()
                .map(|f| neg_boxed_parts(f).map(neg))
                .collect::<Option<_>>()?;
            Some(Sequent { ant, suc })
        }
        Rule::BlackR => {
            let phi = boxed_parts(pi)?;
            if !s.suc.contains(pi) {
                return None;
            }
            let ant = s.ant.iter().map(|f| boxed_parts(f).cloned()).collect::<Option<_>>()?;
            let mut suc = BTreeSet::new();
            for f in s.suc.iter().filter(|f| *f != pi) {
                suc.insert(neg(neg_boxed_parts(f)?));
            }
            suc.insert(phi.clone());
            Some(Sequent { ant, suc })
        }
        _ => None,
    }
}

fn blackbox_instances(rule: Rule, s: &Sequent) -> Vec<(Formula, Sequent)> {
    let candidates = match rule {
        Rule::BlackL => &s.ant,
        _ => &s.suc,
    };
    candidates
        .iter()
        .filter_map(|pi| blackbox_premise(rule, s, pi).map(|p| (pi.clone(), p)))
        .collect()
}

/// Optional annotations of a rule application. The checker recomputes
/// everything; a recorded principal or cut formula must agree with it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideInfo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<Formula>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<Formula>,
    /// Atoms a weak Kleene side condition requires of the antecedent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub props: Option<Vec<String>>,
}

impl SideInfo {
    pub fn is_empty(&self) -> bool {
        *self == SideInfo::default()
    }

    fn principal(f: &Formula) -> SideInfo {
        SideInfo {
            principal: Some(f.clone()),
            ..SideInfo::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub sequent: Sequent,
    pub rule: Rule,
    #[serde(default)]
    pub children: Vec<Derivation>,
    #[serde(default, skip_serializing_if = "SideInfo::is_empty")]
    pub side: SideInfo,
}

impl Derivation {
    pub fn leaf(sequent: Sequent, rule: Rule) -> Self {
        Derivation {
            sequent,
            rule,
            children: vec![],
            side: SideInfo::default(),
        }
    }

    pub fn node(sequent: Sequent, rule: Rule, children: Vec<Derivation>, side: SideInfo) -> Self {
        Derivation {
            sequent,
            rule,
            children,
            side,
        }
    }

    /// Nodes on the longest branch, minus one.
    pub fn length(&self) -> usize {
        self.children.iter().map(|c| c.length() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn uses_cut(&self) -> bool {
        self.rule == Rule::Cut || self.children.iter().any(Derivation::uses_cut)
    }

    pub fn rules_used(&self) -> BTreeSet<Rule> {
        let mut out = BTreeSet::from([self.rule]);
        for c in &self.children {
            out.extend(c.rules_used());
        }
        out
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
#[error("invalid {rule} step at node {path:?} ({sequent}): {reason}")]
pub struct CheckError {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub sequent: Sequent,
    pub rule: Rule,
    pub reason: String,
}

fn check_step(c: CalculusId, d: &Derivation) -> Result<(), String> {
    if !c.has_rule(d.rule) {
        return Err(format!("{} has no rule {}", c, d.rule));
    }
    if let Some(f) = c.admits_sequent(&d.sequent) {
        return Err(format!("{f} is outside the language of {c}"));
    }
    let s = &d.sequent;
    let kids: Vec<&Sequent> = d.children.iter().map(|k| &k.sequent).collect();
    if d.rule.is_axiom() {
        if !kids.is_empty() {
            return Err("axioms have no premises".into());
        }
        return if axiom_holds(c, d.rule, s) {
            Ok(())
        } else {
            Err("not an instance of the axiom".into())
        };
    }
    match d.rule {
        Rule::Cut => {
            let [p0, p1] = kids[..] else {
                return Err("cut has two premises".into());
            };
            let found = p0.suc.iter().chain(&p1.ant).find(|phi| {
                d.side.cut.as_ref().map_or(true, |c| c == *phi)
                    && *p0 == premise_of(s, None, true, &right((*phi).clone()))
                    && *p1 == premise_of(s, None, true, &left((*phi).clone()))
            });
            found.map(|_| ()).ok_or_else(|| "premises are not Γ⇒Δ,φ and φ,Γ⇒Δ".into())
        }
        Rule::BlackL | Rule::BlackR => {
            let [p] = kids[..] else {
                return Err("one premise expected".into());
            };
            let ok = blackbox_instances(d.rule, s).into_iter().any(|(pi, prem)| {
                d.side.principal.as_ref().map_or(true, |x| *x == pi) && prem == *p
            });
            if ok {
                Ok(())
            } else {
                Err("conclusion or premise does not have the exact black-box shape".into())
            }
        }
        rule => {
            let mut side_failure = None;
            for (pi, prems) in backward_instances(rule, s, false) {
                if d.side.principal.as_ref().is_some_and(|x| *x != pi) {
                    continue;
                }
                if prems.len() != kids.len() || prems.iter().zip(&kids).any(|(a, b)| a != *b) {
                    continue;
                }
                match side_condition(c, rule, &pi, &s.ant) {
                    Ok(()) => return Ok(()),
                    Err(e) => side_failure = Some(e),
                }
            }
            Err(side_failure.unwrap_or_else(|| "premises do not match any instance".into()))
        }
    }
}

/// Checks every node, children before parents, left to right; reports the
/// first offending node.
pub fn check_derivation(c: CalculusId, d: &Derivation) -> Result<(), CheckError> {
    fn go(c: CalculusId, d: &Derivation, path: &mut Vec<usize>) -> Result<(), CheckError> {
        for (i, k) in d.children.iter().enumerate() {
            path.push(i);
            go(c, k, path)?;
            path.pop();
        }
        check_step(c, d).map_err(|reason| CheckError {
            path: path.clone(),
            sequent: d.sequent.clone(),
            rule: d.rule,
            reason,
        })
    }
    go(c, d, &mut Vec::new())
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WeakenError {
    #[error("black-box rules admit no context, so the derivation cannot be weakened")]
    BlackBox,
}

/// Adds `ant` and `suc` to every sequent of `d`; the result is a derivation of
/// the weakened root with the same length.
pub fn weaken(d: &Derivation, ant: &BTreeSet<Formula>, suc: &BTreeSet<Formula>) -> Result<Derivation, WeakenError> {
    if matches!(d.rule, Rule::BlackL | Rule::BlackR) {
        return Err(WeakenError::BlackBox);
    }
    let children = d
        .children
        .iter()
        .map(|k| weaken(k, ant, suc))
        .collect::<Result<_, _>>()?;
    let mut sequent = d.sequent.clone();
    sequent.ant.extend(ant.iter().cloned());
    sequent.suc.extend(suc.iter().cloned());
    Ok(Derivation {
        sequent,
        rule: d.rule,
        children,
        side: d.side.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    

    fn sq(s: &str) -> Sequent {
        s.parse().unwrap()
    }

    fn fm(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn rule_names_round_trip() {
        for r in CalculusId::boxed(Base::F3).rules().into_iter().chain(CalculusId::blackbox(Base::Ks3).rules()) {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        assert_eq!(Rule::NegAndL.name(), "¬∧l");
        assert_eq!(serde_json::to_string(&Rule::FcR2).unwrap(), "\"↠r2\"");
    }

    #[test]
    fn calculus_names() {
        for c in ["FDE", "K3_box", "lp_blackbox", "F3_box"] {
            let id: CalculusId = c.parse().unwrap();
            assert_eq!(id.to_string().to_lowercase(), c.to_lowercase());
        }
        assert!("K4".parse::<CalculusId>().is_err());
    }

    #[test]
    fn and_left_from_reflexivity() {
        let leaf = Derivation::leaf(sq("p0 => p0"), Rule::Ref);
        let d = Derivation::node(sq("p0 /\\ p1 => p0"), Rule::AndL, vec![leaf], SideInfo::default());
        check_derivation(CalculusId::new(Base::Fde, Modal::None), &d).unwrap();
        assert_eq!(d.length(), 1);
    }

    #[test]
    fn weak_kleene_negation_needs_props() {
        let leaf = Derivation::leaf(sq("p0 => "), Rule::Ref);
        let d = Derivation::node(sq("=> ~p0"), Rule::NegR, vec![leaf], SideInfo::default());
        let err = check_derivation(CalculusId::new(Base::B3, Modal::None), &d).unwrap_err();
        // the leaf is not an axiom either; the premise is checked first
        assert_eq!(err.path, vec![0]);
        let leaf = Derivation::node(sq("p0 => "), Rule::Cut, vec![], SideInfo::default());
        let d = Derivation::node(sq("=> ~p0"), Rule::NegR, vec![leaf.clone()], SideInfo::default());
        let step = check_step(CalculusId::new(Base::B3, Modal::None), &d).unwrap_err();
        assert!(step.contains("side condition"), "{step}");
    }

    #[test]
    fn excluded_middle_in_lp() {
        let c = CalculusId::boxed(Base::Lp);
        let d = Derivation::node(
            sq("=> p0 \\/ ~p0"),
            Rule::OrR,
            vec![Derivation::node(
                sq("=> p0 \\/ ~p0, p0"),
                Rule::OrR,
                vec![Derivation::node(
                    sq("=> p0, ~p0"),
                    Rule::NegR,
                    vec![Derivation::leaf(sq("p0 => p0"), Rule::Ref)],
                    SideInfo::default(),
                )],
                SideInfo::default(),
            )],
            SideInfo::default(),
        );
        check_derivation(c, &d).unwrap();
        // K3 has no (¬r)
        assert!(check_derivation(CalculusId::boxed(Base::K3), &d).is_err());
    }

    #[test]
    fn negated_conjunction_left_uses_both_conjuncts() {
        let c = CalculusId::boxed(Base::Fde);
        let d = Derivation::node(
            sq("~(p0 /\\ p1) => ~p0, ~p1"),
            Rule::NegAndL,
            vec![
                Derivation::leaf(sq("~p0 => ~p0, ~p1"), Rule::Ref),
                Derivation::leaf(sq("~p1 => ~p0, ~p1"), Rule::Ref),
            ],
            SideInfo::principal(&fm("~(p0 /\\ p1)")),
        );
        check_derivation(c, &d).unwrap();
    }

    #[test]
    fn blackbox_shapes() {
        let c = CalculusId::blackbox(Base::Fde);
        let d = Derivation::node(
            sq("[](p0 /\\ p1) => []p0"),
            Rule::BlackR,
            vec![Derivation::node(
                sq("p0 /\\ p1 => p0"),
                Rule::AndL,
                vec![Derivation::leaf(sq("p0 => p0"), Rule::Ref)],
                SideInfo::default(),
            )],
            SideInfo::default(),
        );
        check_derivation(c, &d).unwrap();
        let left = Derivation::node(
            sq("[]p0, ~[]p1 => ~[]p2"),
            Rule::BlackL,
            vec![Derivation::leaf(sq("p0, ~p1 => ~p2"), Rule::Cut)],
            SideInfo::default(),
        );
        assert!(check_step(c, &left).is_ok());
        // extra context is rejected
        let extra = Derivation::node(
            sq("p3, [](p0 /\\ p1) => []p0"),
            Rule::BlackR,
            d.children.clone(),
            SideInfo::default(),
        );
        assert!(check_step(c, &extra).is_err());
        assert_eq!(weaken(&d, &BTreeSet::new(), &BTreeSet::new()), Err(WeakenError::BlackBox));
    }

    #[test]
    fn weakening_keeps_length() {
        let c = CalculusId::boxed(Base::B3);
        let d = match prove(c, &sq("~~p0 => p0"), SearchOptions::default()) {
            ProofResult::Derivation(d) => d,
            other => panic!("{other:?}"),
        };
        let w = weaken(&d, &[fm("p1 ->> p2")].into(), &[fm("[]p3")].into());
        // F3-only formula: outside B3's language
        assert!(check_derivation(c, &w.unwrap()).is_err());
        let w = weaken(&d, &[fm("p1")].into(), &[fm("[]p3")].into()).unwrap();
        check_derivation(c, &w).unwrap();
        assert_eq!(w.length(), d.length());
    }

    #[test]
    fn derivation_json_shape() {
        let d = Derivation::leaf(sq("p0 => p0"), Rule::Ref);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"sequent":{"ant":["p0"],"suc":["p0"]},"rule":"ref","children":[]}"#
        );
        let back: Derivation = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
