//! Mixed idiosyncratic models: classical worlds that each see one
//! nonclassical, self-seeing world. Decides the classical modal logics
//! BM⁻ … Mᶠ by enumerating single-rooted models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manyvalued::{
    atom_map, increment, value_at_reflexive, EvalError, Polarity, Scheme, TruthValue, Valuation,
};
use crate::syntax::{nabla, nabla_bar, nabla_bar2, Formula};

pub mod axioms;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MixedError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{atoms} atoms exceed the enumeration limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("ill-formed model: {0}")]
    IllFormed(String),
}

/// Range of values allowed at the nonclassical worlds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SchemeClass {
    FourValued,
    Consistent,
    Complete,
    Symmetric,
}

impl SchemeClass {
    pub fn of(s: Scheme) -> SchemeClass {
        match s {
            Scheme::Fde => SchemeClass::FourValued,
            Scheme::K3 | Scheme::B3 | Scheme::F3 => SchemeClass::Consistent,
            Scheme::Lp => SchemeClass::Complete,
            Scheme::Ks3 => SchemeClass::Symmetric,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalWorld {
    /// Index of the unique nonclassical successor.
    pub successor: usize,
    /// Values in {0, 1}.
    #[serde(with = "atom_map")]
    pub valuation: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonclassicalWorld {
    #[serde(with = "atom_map")]
    pub valuation: Valuation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Polarity>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum World {
    /// classical
    W(usize),
    /// nonclassical
    Z(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedModel {
    pub classical: Vec<ClassicalWorld>,
    pub nonclassical: Vec<NonclassicalWorld>,
    pub scheme: Scheme,
}

impl MixedModel {
    /// One classical world `w` seeing one nonclassical world `z`.
    pub fn single_rooted(
        scheme: Scheme,
        w: Valuation,
        z: Valuation,
        polarity: Option<Polarity>,
    ) -> MixedModel {
        MixedModel {
            classical: vec![ClassicalWorld {
                successor: 0,
                valuation: w,
            }],
            nonclassical: vec![NonclassicalWorld {
                valuation: z,
                polarity,
            }],
            scheme,
        }
    }

    pub fn class(&self) -> SchemeClass {
        SchemeClass::of(self.scheme)
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for w in &self.classical {
            out.extend(w.valuation.keys());
        }
        for z in &self.nonclassical {
            out.extend(z.valuation.keys());
        }
        out
    }

    pub fn validate(&self) -> Result<(), MixedError> {
        if self.classical.is_empty() || self.nonclassical.is_empty() {
            return Err(MixedError::IllFormed("both kinds of world are required".into()));
        }
        for (i, w) in self.classical.iter().enumerate() {
            if w.successor >= self.nonclassical.len() {
                return Err(MixedError::IllFormed(format!(
                    "classical world {i} sees missing world {}",
                    w.successor
                )));
            }
            if let Some((a, v)) = w.valuation.iter().find(|(_, v)| !v.is_classical()) {
                return Err(MixedError::IllFormed(format!(
                    "classical world {i} gives p{a} the value {v}"
                )));
            }
        }
        for z in &self.nonclassical {
            let pol = match self.scheme {
                Scheme::Ks3 => Some(z.polarity.unwrap_or(Polarity::Consistent)),
                _ => None,
            };
            for (a, v) in &z.valuation {
                if !self.scheme.allows(*v, pol) {
                    return Err(EvalError::IllegalValueForScheme {
                        atom: *a,
                        value: *v,
                        scheme: self.scheme,
                    }
                    .into());
                }
            }
        }
        Ok(())
    }

    /// Classical values at a nonclassical world reappear at every classical
    /// world that sees it.
    pub fn is_faithful(&self) -> bool {
        self.classical.iter().all(|w| {
            let z = &self.nonclassical[w.successor];
            z.valuation
                .iter()
                .filter(|(_, v)| v.is_classical())
                .all(|(a, v)| w.valuation.get(a) == Some(v))
        })
    }

    fn dense(val: &Valuation, width: usize) -> Vec<TruthValue> {
        let mut out = vec![TruthValue::Zero; width];
        for (a, v) in val {
            out[*a as usize] = *v;
        }
        out
    }
}

fn check_atoms(f: &Formula, val: &Valuation) -> Result<(), EvalError> {
    match f.props().into_iter().find(|a| !val.contains_key(a)) {
        Some(a) => Err(EvalError::MissingAtom(a)),
        None => Ok(()),
    }
}

/// Truth at a classical world: atom values from `w`, boxes read at the
/// successor whose values are `z`.
pub fn value_at_classical(s: Scheme, f: &Formula, w: &[TruthValue], z: &[TruthValue]) -> bool {
    match f {
        Formula::Atom(j) => w[*j as usize] == TruthValue::One,
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(a) => !value_at_classical(s, a, w, z),
        Formula::Box(a) => value_at_reflexive(s, a, z).designated(),
        Formula::And(a, b) => value_at_classical(s, a, w, z) && value_at_classical(s, b, w, z),
        Formula::Or(a, b) => value_at_classical(s, a, w, z) || value_at_classical(s, b, w, z),
        Formula::Fc(a, b) => !value_at_classical(s, a, w, z) || value_at_classical(s, b, w, z),
    }
}

/// Value of `f` at `world`; always 0 or 1 at classical worlds.
pub fn eval_mixed(m: &MixedModel, world: World, f: &Formula) -> Result<TruthValue, MixedError> {
    m.validate()?;
    m.scheme.check_formula(f)?;
    let width = m.atoms().iter().max().map_or(0, |a| *a as usize + 1);
    match world {
        World::Z(i) => {
            let z = m.nonclassical.get(i).ok_or(EvalError::NoSuchWorld(i))?;
            check_atoms(f, &z.valuation)?;
            Ok(value_at_reflexive(m.scheme, f, &MixedModel::dense(&z.valuation, width)))
        }
        World::W(i) => {
            let w = m.classical.get(i).ok_or(EvalError::NoSuchWorld(i))?;
            let z = &m.nonclassical[w.successor];
            check_atoms(f, &w.valuation)?;
            check_atoms(f, &z.valuation)?;
            Ok(TruthValue::from_bool(value_at_classical(
                m.scheme,
                f,
                &MixedModel::dense(&w.valuation, width),
                &MixedModel::dense(&z.valuation, width),
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalLogic {
    BMMinus,
    BM,
    MMinus,
    M,
    Mn,
    Mb,
    MwMinus,
    Mw,
    MfMinus,
    Mf,
}

impl ClassicalLogic {
    pub const ALL: [ClassicalLogic; 10] = [
        ClassicalLogic::BMMinus,
        ClassicalLogic::BM,
        ClassicalLogic::MMinus,
        ClassicalLogic::M,
        ClassicalLogic::Mn,
        ClassicalLogic::Mb,
        ClassicalLogic::MwMinus,
        ClassicalLogic::Mw,
        ClassicalLogic::MfMinus,
        ClassicalLogic::Mf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalLogic::BMMinus => "BM-",
            ClassicalLogic::BM => "BM",
            ClassicalLogic::MMinus => "M-",
            ClassicalLogic::M => "M",
            ClassicalLogic::Mn => "Mn",
            ClassicalLogic::Mb => "Mb",
            ClassicalLogic::MwMinus => "Mw-",
            ClassicalLogic::Mw => "Mw",
            ClassicalLogic::MfMinus => "Mf-",
            ClassicalLogic::Mf => "Mf",
        }
    }

    /// Evaluation scheme at the nonclassical world.
    pub fn scheme(self) -> Scheme {
        match self {
            ClassicalLogic::BMMinus | ClassicalLogic::BM => Scheme::Fde,
            ClassicalLogic::MMinus | ClassicalLogic::M => Scheme::Ks3,
            ClassicalLogic::Mn => Scheme::K3,
            ClassicalLogic::Mb => Scheme::Lp,
            ClassicalLogic::MwMinus | ClassicalLogic::Mw => Scheme::B3,
            ClassicalLogic::MfMinus | ClassicalLogic::Mf => Scheme::F3,
        }
    }

    /// Whether the logic contains `□φ∧¬□¬φ→φ`, i.e. is complete for
    /// faithful models.
    pub fn faithful(self) -> bool {
        !matches!(
            self,
            ClassicalLogic::BMMinus
                | ClassicalLogic::MMinus
                | ClassicalLogic::MwMinus
                | ClassicalLogic::MfMinus
        )
    }

    pub fn allows_fc(self) -> bool {
        self.scheme() == Scheme::F3
    }

    /// Scheme of the internal logic governing reasoning under the box.
    pub fn inner(self) -> Scheme {
        self.scheme()
    }
}

impl fmt::Display for ClassicalLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicalLogic {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassicalLogic::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown logic {s:?} (expected one of BM-, BM, M-, M, Mn, Mb, Mw-, Mw, Mf-, Mf)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Countermodel {
    #[serde(with = "atom_map")]
    pub w: Valuation,
    #[serde(with = "atom_map")]
    pub z: Valuation,
    pub scheme: Scheme,
    pub faithful: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Polarity>,
    #[serde(rename = "failsAt")]
    pub fails_at: String,
}

impl Countermodel {
    pub fn model(&self) -> MixedModel {
        MixedModel::single_rooted(self.scheme, self.w.clone(), self.z.clone(), self.polarity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Decision {
    Theorem,
    Countermodel(Countermodel),
}

impl Decision {
    pub fn is_theorem(&self) -> bool {
        matches!(self, Decision::Theorem)
    }
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Decision::Countermodel(c) => Some(c),
            Decision::Theorem => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub max_atoms: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { max_atoms: 8 }
    }
}

/// A single-rooted model handed to search callbacks: dense value vectors
/// indexed by atom.
pub struct RootedValues<'a> {
    pub w: &'a [TruthValue],
    pub z: &'a [TruthValue],
    pub polarity: Option<Polarity>,
}

/// Visits every single-rooted model of `logic` over `atoms` in canonical
/// order (`z` outermost, each atom `n < b < 0 < 1`; then `w`, `0 < 1`) until
/// `visit` returns `true`; returns the model it stopped at.
pub fn find_single_rooted<F>(
    logic: ClassicalLogic,
    atoms: &[u32],
    opts: DecideOptions,
    mut visit: F,
) -> Result<Option<Countermodel>, MixedError>
where
    F: FnMut(&RootedValues) -> bool,
{
    if atoms.len() > opts.max_atoms {
        return Err(MixedError::TooManyAtoms {
            atoms: atoms.len(),
            limit: opts.max_atoms,
        });
    }
    let s = logic.scheme();
    let width = atoms.iter().max().map_or(0, |a| *a as usize + 1);
    let mut z = vec![TruthValue::Zero; width];
    let mut w = vec![TruthValue::Zero; width];
    for pol in s.polarities() {
        let zvals = s.values(pol);
        let mut zd = vec![0usize; atoms.len()];
        loop {
            for (k, a) in atoms.iter().enumerate() {
                z[*a as usize] = zvals[zd[k]];
            }
            // atoms whose w-value is free
            let free: Vec<u32> = atoms
                .iter()
                .copied()
                .filter(|a| !logic.faithful() || !z[*a as usize].is_classical())
                .collect();
            for a in atoms {
                if !free.contains(a) {
                    w[*a as usize] = z[*a as usize];
                }
            }
            let mut wd = vec![0usize; free.len()];
            loop {
                for (k, a) in free.iter().enumerate() {
                    w[*a as usize] = if wd[k] == 0 { TruthValue::Zero } else { TruthValue::One };
                }
                if visit(&RootedValues { w: &w, z: &z, polarity: pol }) {
                    let pick = |v: &[TruthValue]| atoms.iter().map(|a| (*a, v[*a as usize])).collect();
                    return Ok(Some(Countermodel {
                        w: pick(&w),
                        z: pick(&z),
                        scheme: s,
                        faithful: logic.faithful(),
                        polarity: pol,
                        fails_at: "w".into(),
                    }));
                }
                if !increment(&mut wd, 2) {
                    break;
                }
            }
            if !increment(&mut zd, zvals.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Every single-rooted model of `logic` over `atoms`, in canonical order.
pub fn single_rooted_models(logic: ClassicalLogic, atoms: &[u32]) -> Result<Vec<MixedModel>, MixedError> {
    let s = logic.scheme();
    let mut out = Vec::new();
    let pick = |v: &[TruthValue]| atoms.iter().map(|a| (*a, v[*a as usize])).collect();
    find_single_rooted(logic, atoms, DecideOptions::default(), |m| {
        out.push(MixedModel::single_rooted(s, pick(m.w), pick(m.z), m.polarity));
        false
    })?;
    Ok(out)
}

fn check_language(logic: ClassicalLogic, f: &Formula) -> Result<(), MixedError> {
    Ok(logic.scheme().check_formula(f)?)
}

pub fn decide(logic: ClassicalLogic, f: &Formula) -> Result<Decision, MixedError> {
    decide_with(logic, f, DecideOptions::default())
}

/// Theoremhood by exhaustive search for a falsifying single-rooted model.
pub fn decide_with(
    logic: ClassicalLogic,
    f: &Formula,
    opts: DecideOptions,
) -> Result<Decision, MixedError> {
    check_language(logic, f)?;
    let atoms: Vec<u32> = f.props().into_iter().collect();
    let s = logic.scheme();
    let found = find_single_rooted(logic, &atoms, opts, |m| !value_at_classical(s, f, m.w, m.z))?;
    Ok(found.map_or(Decision::Theorem, Decision::Countermodel))
}

/// `Γ ⊢ f`: truth at classical worlds is preserved from Γ to `f`.
pub fn consequence_classical(
    logic: ClassicalLogic,
    gamma: &[Formula],
    f: &Formula,
) -> Result<Decision, MixedError> {
    let mut atoms = f.props();
    check_language(logic, f)?;
    for g in gamma {
        check_language(logic, g)?;
        g.collect_props(&mut atoms);
    }
    let atoms: Vec<u32> = atoms.into_iter().collect();
    let s = logic.scheme();
    let found = find_single_rooted(logic, &atoms, DecideOptions::default(), |m| {
        gamma.iter().all(|g| value_at_classical(s, g, m.w, m.z)) && !value_at_classical(s, f, m.w, m.z)
    })?;
    Ok(found.map_or(Decision::Theorem, Decision::Countermodel))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithCheck {
    /// Every `□φ∧¬□¬φ→φ` with φ a literal over the model's atoms holds at
    /// every classical world.
    pub instances_hold: bool,
    pub faithful: bool,
}

impl FaithCheck {
    pub fn agree(&self) -> bool {
        self.instances_hold == self.faithful
    }
}

pub fn faith(phi: Formula) -> Formula {
    axioms::Schema::by_name("faith").unwrap().instance(&[phi])
}

pub fn check_faithfulness_equivalence(m: &MixedModel) -> Result<FaithCheck, MixedError> {
    m.validate()?;
    let mut instances_hold = true;
    for a in m.atoms() {
        for phi in [Formula::Atom(a), Formula::not(Formula::Atom(a))] {
            let inst = faith(phi);
            for i in 0..m.classical.len() {
                if eval_mixed(m, World::W(i), &inst)? != TruthValue::One {
                    instances_hold = false;
                }
            }
        }
    }
    Ok(FaithCheck {
        instances_hold,
        faithful: m.is_faithful(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditFailure {
    pub schema: &'static str,
    pub instance: Formula,
    pub countermodel: Option<Countermodel>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub instances: usize,
    pub failures: Vec<AuditFailure>,
}

/// Decides every instance of every axiom schema of `logic` with schematic
/// letters ranging over `formulas`.
pub fn axiom_audit(logic: ClassicalLogic, formulas: &[Formula]) -> Result<AuditReport, MixedError> {
    let mut report = AuditReport::default();
    for schema in axioms::schemas(logic) {
        if schema.arity > 0 && formulas.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; schema.arity];
        loop {
            let args: Vec<Formula> = idx.iter().map(|i| formulas[*i].clone()).collect();
            let inst = schema.instance(&args);
            report.instances += 1;
            if let Decision::Countermodel(c) = decide(logic, &inst)? {
                report.failures.push(AuditFailure {
                    schema: schema.name,
                    instance: inst,
                    countermodel: Some(c),
                });
            }
            if schema.arity == 0 || formulas.is_empty() || !increment(&mut idx, formulas.len()) {
                break;
            }
        }
    }
    Ok(report)
}

/// Which abbreviation the nabla property is stated with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum NablaForm {
    /// `⊢ ∇̄f` iff `⊢ ∇̄p` for some atom p of f
    Bar,
    /// `⊢ ∇f` iff `⊢ ∇p` for some atom p of f
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NablaViolation {
    pub formula: Formula,
    pub formula_side: bool,
    pub atom_side: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NablaReport {
    pub checked: usize,
    pub violations: Vec<NablaViolation>,
}

pub fn nabla_property(
    logic: ClassicalLogic,
    formulas: &[Formula],
    form: NablaForm,
) -> Result<NablaReport, MixedError> {
    let wrap = |f: Formula| match form {
        NablaForm::Bar => nabla_bar(f),
        NablaForm::Plain => nabla(f),
    };
    let mut atom_cache: BTreeMap<u32, bool> = BTreeMap::new();
    let mut report = NablaReport::default();
    for f in formulas {
        let formula_side = decide(logic, &wrap(f.clone()))?.is_theorem();
        let mut atom_side = false;
        for a in f.props() {
            let t = match atom_cache.get(&a) {
                Some(t) => *t,
                None => {
                    let t = decide(logic, &wrap(Formula::Atom(a)))?.is_theorem();
                    atom_cache.insert(a, t);
                    t
                }
            };
            atom_side |= t;
        }
        report.checked += 1;
        if formula_side != atom_side {
            report.violations.push(NablaViolation {
                formula: f.clone(),
                formula_side,
                atom_side,
            });
        }
    }
    Ok(report)
}

/// `∇̄(φ,ψ)` re-exported for schema construction.
pub fn classical_under_box(a: Formula, b: Formula) -> Formula {
    nabla_bar2(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::p;
    use TruthValue::{One, Zero, B, N};

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn cm(logic: ClassicalLogic, s: &str) -> Countermodel {
        decide(logic, &f(s)).unwrap().countermodel().cloned().expect("countermodel")
    }

    #[test]
    fn faith_separates_bm_minus_from_bm() {
        let faith = "[]p0 /\\ ~[]~p0 -> p0";
        assert!(decide(ClassicalLogic::BM, &f(faith)).unwrap().is_theorem());
        let c = cm(ClassicalLogic::BMMinus, faith);
        assert_eq!(c.z, [(0, One)].into());
        assert_eq!(c.w, [(0, Zero)].into());
    }

    #[test]
    fn derived_theorems() {
        assert!(decide(ClassicalLogic::Mn, &f("[]p0 -> p0")).unwrap().is_theorem());
        assert!(decide(ClassicalLogic::Mb, &f("p0 -> []p0")).unwrap().is_theorem());
        assert!(decide(ClassicalLogic::M, &f("([]p0 -> p0) \\/ (p1 -> []p1)")).unwrap().is_theorem());
        let c = cm(ClassicalLogic::BM, "[]p0 -> p0");
        assert_eq!((c.z[&0], c.w[&0]), (B, Zero));
    }

    #[test]
    fn classical_consequence() {
        let bm = ClassicalLogic::BM;
        assert!(consequence_classical(bm, &[f("[]p0")], &f("[]~~p0")).unwrap().is_theorem());
        let c = consequence_classical(bm, &[p(0)], &f("[]p0")).unwrap();
        let c = c.countermodel().unwrap();
        assert_eq!((c.z[&0], c.w[&0]), (N, One));
        assert!(consequence_classical(ClassicalLogic::Mb, &[p(0)], &f("[]p0")).unwrap().is_theorem());
    }

    #[test]
    fn eval_at_both_kinds_of_world() {
        let m = MixedModel::single_rooted(Scheme::Fde, [(0, Zero)].into(), [(0, B)].into(), None);
        assert!(m.is_faithful());
        assert_eq!(eval_mixed(&m, World::W(0), &f("[]p0")).unwrap(), One);
        assert_eq!(eval_mixed(&m, World::W(0), &p(0)).unwrap(), Zero);
        assert_eq!(eval_mixed(&m, World::Z(0), &f("[]p0")).unwrap(), B);
        assert_eq!(eval_mixed(&m, World::W(0), &f("[]T")).unwrap(), One);
        let k = MixedModel::single_rooted(Scheme::K3, [(0, One)].into(), [(0, N)].into(), None);
        assert_eq!(eval_mixed(&k, World::W(0), &f("~[]p0 /\\ ~[]~p0")).unwrap(), One);
    }

    #[test]
    fn fc_only_in_the_f_family() {
        assert!(matches!(
            decide(ClassicalLogic::Mw, &f("p0 ->> p0")),
            Err(MixedError::Eval(EvalError::IllegalConnective { .. }))
        ));
        assert!(decide(ClassicalLogic::Mf, &f("(p0 ->> p1) <-> (p0 -> p1)")).unwrap().is_theorem());
    }

    #[test]
    fn atom_limit() {
        let big = Formula::conj((0..9).map(p));
        assert!(matches!(
            decide(ClassicalLogic::BM, &big),
            Err(MixedError::TooManyAtoms { atoms: 9, limit: 8 })
        ));
        let opts = DecideOptions { max_atoms: 9 };
        assert!(!decide_with(ClassicalLogic::Mn, &big, opts).unwrap().is_theorem());
    }

    #[test]
    fn faithfulness_equivalence_examples() {
        for (w, z) in [(One, One), (One, Zero), (Zero, One), (One, B), (Zero, N)] {
            let m = MixedModel::single_rooted(Scheme::Fde, [(0, w)].into(), [(0, z)].into(), None);
            let c = check_faithfulness_equivalence(&m).unwrap();
            assert!(c.agree(), "{w} {z}");
            assert_eq!(c.faithful, !(z.is_classical() && z != w));
        }
    }

    #[test]
    fn countermodel_json() {
        let c = cm(ClassicalLogic::BM, "[]p0 -> p0");
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"w":{"p0":0},"z":{"p0":"b"},"scheme":"fde","faithful":true,"failsAt":"w"}"#
        );
    }

    #[test]
    fn audit_examples() {
        let fs = vec![p(0), p(1), f("~p0"), f("[]p1")];
        let r = axiom_audit(ClassicalLogic::Mw, &fs).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        // faith is not a BM⁻ axiom, so auditing BM's list under BM⁻ semantics fails
        let bad = axioms::Schema::by_name("faith").unwrap();
        assert!(!decide(ClassicalLogic::BMMinus, &bad.instance(&[p(0)])).unwrap().is_theorem());
    }
}
