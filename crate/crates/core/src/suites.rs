//! Named verification sweeps. Each runs exhaustively (or over a seeded
//! random sample) and reports what it checked and what failed.

use std::collections::BTreeSet;
use std::thread;

use serde::Serialize;

use crate::calculi::{
    check_derivation, crosscheck_adequacy, Base, CalculusId, DerivationGenerator, GeneratorConfig,
    SearchOptions,
};
use crate::corpus::{formulas, sequents, Language};
use crate::kftruth::{self, BridgeMode, Jump, Sentence, Universe};
use crate::manyvalued::{internal_consequence, value_at_reflexive, Scheme, TruthValue};
use crate::mixed::{
    axiom_audit, axioms::Schema, check_faithfulness_equivalence, consequence_classical, decide,
    nabla_property, single_rooted_models, ClassicalLogic, Decision, NablaForm,
};
use crate::syntax::{Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Atoms in formulas and models.
    pub atoms: u32,
    /// Maximum formula height (atoms and constants have height 1).
    pub depth: usize,
    pub seed: u64,
    /// Random derivations per calculus.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            atoms: 2,
            depth: 2,
            seed: 0,
            samples: 10_000,
        }
    }
}

pub const NAMES: &[&str] = &[
    "faith", "connecting", "nabla", "modfxp", "extnrp", "maintc", "liar", "tito", "extfcon", "intre",
    "axioms", "calculi",
];

/// Runs the named suite; `None` for an unknown name.
pub fn run(name: &str, cfg: SuiteConfig) -> Option<SuiteReport> {
    Some(match name {
        "faith" => faith(cfg),
        "connecting" => connecting(cfg),
        "nabla" => nabla(cfg),
        "modfxp" => modfxp(cfg),
        "extnrp" => witness_bridge(cfg).0,
        "maintc" => witness_bridge(cfg).1,
        "liar" => liar(),
        "tito" => tito(cfg),
        "extfcon" => extfcon(),
        "intre" => intre(cfg),
        "axioms" => axioms(cfg),
        "calculi" => calculi(cfg),
        _ => return None,
    })
}

fn f(s: &str) -> Formula {
    s.parse().expect("built-in formula")
}

fn atom_list(n: u32) -> Vec<u32> {
    (0..n).collect()
}

fn corpus(cfg: SuiteConfig, fc: bool) -> Vec<Formula> {
    formulas(cfg.atoms, cfg.depth, Language { fc, ..Language::default() })
}

/// Splits `items` across threads and concatenates the per-chunk results
/// in order.
fn par_map<T: Sync, R: Send>(items: &[T], work: impl Fn(&[T]) -> R + Sync) -> Vec<R> {
    let threads = thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = items.len().div_ceil(threads).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| work(c))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// The faith schema separates BM⁻ from BM, and holds in a single-rooted
/// model exactly when the model is faithful.
pub fn faith(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("faith");
    let inst = f("[]p0 /\\ ~[]~p0 -> p0");
    match decide(ClassicalLogic::BMMinus, &inst).expect("decidable") {
        Decision::Countermodel(c) => {
            let (z, w) = (c.z.get(&0).copied(), c.w.get(&0).copied());
            r.notes.push(format!("BM- countermodel: z(p0)={:?}, w(p0)={:?}", z, w));
            if (z, w) != (Some(TruthValue::One), Some(TruthValue::Zero)) {
                r.fail(format!("BM- countermodel has z(p0)={z:?}, w(p0)={w:?}; expected 1 and 0"));
            }
        }
        Decision::Theorem => r.fail("BM- proves the faith instance"),
    }
    r.checked += 1;
    if !decide(ClassicalLogic::BM, &inst).expect("decidable").is_theorem() {
        r.fail("BM does not prove the faith instance");
    }
    r.checked += 1;
    for m in single_rooted_models(ClassicalLogic::BMMinus, &atom_list(cfg.atoms)).expect("models") {
        let check = check_faithfulness_equivalence(&m).expect("valid model");
        r.checked += 1;
        if !check.agree() {
            r.fail(format!("{}: instances hold = {}, faithful = {}", serde_json::to_string(&m).unwrap(), check.instances_hold, check.faithful));
        }
    }
    r
}

pub const CONNECTING_PAIRS: [(Base, ClassicalLogic); 6] = [
    (Base::K3, ClassicalLogic::Mn),
    (Base::Lp, ClassicalLogic::Mb),
    (Base::Ks3, ClassicalLogic::M),
    (Base::Fde, ClassicalLogic::BM),
    (Base::B3, ClassicalLogic::Mw),
    (Base::F3, ClassicalLogic::Mf),
];

/// `⋀□Γ → ⋁□Δ`
pub fn boxed_sequent(s: &Sequent) -> Formula {
    Formula::implies(
        Formula::conj(s.ant.iter().cloned().map(Formula::boxed)),
        Formula::disj(s.suc.iter().cloned().map(Formula::boxed)),
    )
}

/// Internal consequence in `S_□` agrees with theoremhood of `⋀□Γ → ⋁□Δ`
/// in the paired classical logic, for every sequent with at most two
/// formulas a side.
pub fn connecting(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("connecting");
    for (base, logic) in CONNECTING_PAIRS {
        let calc = CalculusId::boxed(base);
        let forms = corpus(cfg, base == Base::F3);
        let all = sequents(&forms, 2);
        let parts = par_map(&all, |chunk| {
            let mut bad = Vec::new();
            let mut holds = 0usize;
            for s in chunk {
                let internal = internal_consequence(&s.ant, &s.suc, calc.scheme())
                    .expect("corpus is in the language")
                    .holds();
                let theorem = decide(logic, &boxed_sequent(s)).expect("decidable").is_theorem();
                holds += internal as usize;
                if internal != theorem {
                    bad.push(format!("{calc} / {logic}: {s}: internal {internal}, theorem {theorem}"));
                }
            }
            (holds, bad)
        });
        let holds: usize = parts.iter().map(|p| p.0).sum();
        r.checked += all.len();
        r.notes.push(format!("{calc} / {logic}: {} sequents, {holds} valid", all.len()));
        for (_, bad) in parts {
            r.failures.extend(bad);
        }
    }
    r
}

/// `⊢ ∇̄f` iff `⊢ ∇̄p` for some atom `p` of `f`, in Mʷ and Mᶠ.
pub fn nabla(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("nabla");
    for logic in [ClassicalLogic::Mw, ClassicalLogic::Mf] {
        let forms = corpus(cfg, logic == ClassicalLogic::Mf);
        let reports = par_map(&forms, |chunk| nabla_property(logic, chunk, NablaForm::Bar).expect("decidable"));
        let mut violations = Vec::new();
        for rep in reports {
            r.checked += rep.checked;
            violations.extend(rep.violations);
        }
        let without_constants = violations
            .iter()
            .filter(|v| !v.formula.subformulas().iter().any(|s| matches!(s, Formula::Top | Formula::Bot)))
            .count();
        r.notes.push(format!(
            "{logic}: {} formulas, {} violations ({} without constants)",
            forms.len(),
            violations.len(),
            without_constants
        ));
        for v in violations.iter().take(5) {
            r.notes.push(format!(
                "{logic}: {}: formula side {}, atom side {}",
                v.formula, v.formula_side, v.atom_side
            ));
        }
        r.failures.extend(violations.iter().map(|v| {
            format!("{logic}: {}: formula side {}, atom side {}", v.formula, v.formula_side, v.atom_side)
        }));
    }
    r
}

const WITNESS_LOGICS: [ClassicalLogic; 4] = [
    ClassicalLogic::BM,
    ClassicalLogic::Mn,
    ClassicalLogic::Mb,
    ClassicalLogic::M,
];

/// The seed read off each faithful single-rooted model generates a fixed
/// point holding exactly the seeded truth-teller literals; consistent for
/// gap-only models.
pub fn modfxp(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("modfxp");
    let mut incomplete = 0;
    for logic in WITNESS_LOGICS {
        for m in single_rooted_models(logic, &atom_list(cfg.atoms)).expect("models") {
            r.checked += 1;
            match kftruth::verify_bridge_all(&m, &[], BridgeMode::Witness) {
                Ok(rep) => {
                    r.failures.extend(rep.fixed_point_failures);
                    incomplete += rep.notes.iter().filter(|n| n.contains("not complete")).count();
                    r.failures.extend(
                        rep.notes.into_iter().filter(|n| n.contains("not consistent")).map(|n| format!("{logic}: {n}")),
                    );
                }
                Err(e) => r.fail(format!("{logic}: {e}")),
            }
        }
    }
    r.notes.push(format!("{incomplete} fixed points of glut-only models are not complete"));
    r
}

/// Runs the witness bridge on every faithful single-rooted model of the
/// four logics with a Strong-Kleene inner logic. Returns the membership
/// report (z side) and the classical-truth report (w side).
pub fn witness_bridge(cfg: SuiteConfig) -> (SuiteReport, SuiteReport) {
    witness_bridge_for(cfg, &WITNESS_LOGICS)
}

pub fn witness_bridge_for(cfg: SuiteConfig, logics: &[ClassicalLogic]) -> (SuiteReport, SuiteReport) {
    let mut z_side = SuiteReport::new("extnrp");
    let mut w_side = SuiteReport::new("maintc");
    let forms = corpus(cfg, false);
    for logic in logics {
        let models = single_rooted_models(*logic, &atom_list(cfg.atoms)).expect("models");
        let reps = par_map(&models, |chunk| {
            chunk
                .iter()
                .map(|m| kftruth::verify_bridge_all(m, &forms, BridgeMode::Witness).map_err(|e| e.to_string()))
                .collect::<Vec<_>>()
        });
        for rep in reps.into_iter().flatten() {
            match rep {
                Ok(rep) => {
                    z_side.checked += rep.checks.len();
                    w_side.checked += rep.checks.len();
                    for c in &rep.failures {
                        if c.z_designated != c.in_fixed_point {
                            z_side.fail(format!("{logic}: {}: z {} but membership {}", c.formula, c.z_designated, c.in_fixed_point));
                        }
                        if c.w_true != c.classically_true {
                            w_side.fail(format!("{logic}: {}: w {} but classically {}", c.formula, c.w_true, c.classically_true));
                        }
                    }
                }
                Err(e) => {
                    z_side.fail(format!("{logic}: {e}"));
                    w_side.fail(format!("{logic}: {e}"));
                }
            }
        }
    }
    z_side.notes.push(format!("{} formulas per model", forms.len()));
    w_side.notes.push(format!("{} formulas per model", forms.len()));
    (z_side, w_side)
}

/// The liar in least fixed points and in the fixed point seeded with both
/// of its literals.
pub fn liar() -> SuiteReport {
    let mut r = SuiteReport::new("liar");
    let mut u = Universe::new();
    let l = u.liar();
    let nl = u.neg_of(l).expect("closure");
    let tl = u.lookup(&Sentence::Tr(l)).expect("closure");
    let ntnl = u.tr(nl);
    let ntnl = u.not(ntnl);
    let ntl = u.not(tl);
    for tag in Jump::ALL {
        r.checked += 1;
        let fp = kftruth::lfp(&u, tag, &[]).expect("least fixed point");
        if !fp.consistent {
            r.fail(format!("{tag}: least fixed point is inconsistent"));
        }
        if fp.contains(l) || fp.contains(nl) {
            r.fail(format!("{tag}: least fixed point decides the liar"));
        }
        // λ ∧ ¬T⌜¬λ⌝ ∧ ¬T⌜λ⌝ holds classically
        for (id, what) in [(l, "lam"), (ntnl, "not T(~lam)"), (ntl, "not T(lam)")] {
            if !kftruth::classical_sat(&u, &fp, id) {
                r.fail(format!("{tag}: {what} is classically false in the least fixed point"));
            }
        }
        let both = kftruth::lfp(&u, tag, &[l, nl]).expect("seeded fixed point");
        if !both.contains(tl) {
            r.fail(format!("{tag}: T(lam) missing with both liar literals seeded"));
        }
        if kftruth::classical_sat(&u, &both, l) {
            r.fail(format!("{tag}: lam is classically true with both liar literals seeded"));
        }
    }
    r
}

/// Over BM⁻: the schema `φ → □φ` entails the `D_c` and faith instances,
/// and `□φ → φ` entails the `D` and faith instances (premises are the
/// schema's instances for `φ` and `¬φ`). The converses are reported, not
/// judged.
pub fn tito(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("tito");
    let s = |n: &str| Schema::by_name(n).expect("schema");
    let up = |x: Formula| Formula::implies(x.clone(), Formula::boxed(x));
    let down = |x: Formula| Formula::implies(Formula::boxed(x.clone()), x);
    let forms = formulas(cfg.atoms, cfg.depth.saturating_sub(1).max(1), Language::default());
    let mut converse = [0usize; 4];
    for phi in &forms {
        let nphi = Formula::not(phi.clone());
        let inst = |name: &str| s(name).instance(&[phi.clone()]);
        let cases = [
            (vec![up(phi.clone()), up(nphi.clone())], "Dc"),
            (vec![up(phi.clone()), up(nphi.clone())], "faith"),
            (vec![down(phi.clone()), down(nphi.clone())], "D"),
            (vec![down(phi.clone()), down(nphi.clone())], "faith"),
        ];
        for (k, (gamma, name)) in cases.into_iter().enumerate() {
            r.checked += 1;
            let c = inst(name);
            if !consequence_classical(ClassicalLogic::BMMinus, &gamma, &c).expect("decidable").is_theorem() {
                r.fail(format!("{} do not entail {name}({phi})", gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")));
            }
            let back = consequence_classical(ClassicalLogic::BMMinus, &[c.clone()], &gamma[0]).expect("decidable");
            converse[k] += back.is_theorem() as usize;
        }
    }
    r.notes.push(format!(
        "converses holding out of {}: Dc=>up {}, faith=>up {}, D=>down {}, faith=>down {}",
        forms.len(),
        converse[0],
        converse[1],
        converse[2],
        converse[3]
    ));
    r
}

/// `↠` collapses to `→` at classical worlds but not under the box.
pub fn extfcon() -> SuiteReport {
    let mut r = SuiteReport::new("extfcon");
    r.checked += 2;
    if !decide(ClassicalLogic::Mf, &f("(p0 ->> p1) <-> (p0 -> p1)")).expect("decidable").is_theorem() {
        r.fail("Mf does not prove (p0 ->> p1) <-> (p0 -> p1)");
    }
    let (fc, mat) = (f("p0 ->> p1"), f("p0 -> p1"));
    match decide(ClassicalLogic::Mf, &f("[](p0 ->> p1) <-> [](p0 -> p1)")).expect("decidable") {
        Decision::Theorem => r.fail("Mf proves [](p0 ->> p1) <-> [](p0 -> p1)"),
        Decision::Countermodel(c) => {
            let z: Vec<TruthValue> = (0..2).map(|a| c.z[&a]).collect();
            let d1 = value_at_reflexive(Scheme::F3, &fc, &z).designated();
            let d2 = value_at_reflexive(Scheme::F3, &mat, &z).designated();
            r.notes.push(format!("countermodel z = ({}, {}); boxes designated: {d1}, {d2}", z[0], z[1]));
            if d1 == d2 {
                r.fail("countermodel designates both or neither box body");
            }
        }
    }
    r
}

/// Liar realizations of gap-only and glut-only models, checked in every
/// teller-seeded fixed point.
pub fn intre(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("intre");
    let cases = [
        (ClassicalLogic::Mn, BridgeMode::Circ),
        (ClassicalLogic::Mw, BridgeMode::Circ),
        (ClassicalLogic::Mf, BridgeMode::Circ),
        (ClassicalLogic::Mb, BridgeMode::Dagger),
    ];
    for (logic, mode) in cases {
        let forms = corpus(cfg, logic == ClassicalLogic::Mf);
        let models = single_rooted_models(logic, &atom_list(cfg.atoms)).expect("models");
        let reps = par_map(&models, |chunk| {
            chunk
                .iter()
                .map(|m| kftruth::verify_bridge_all(m, &forms, mode).map_err(|e| e.to_string()))
                .collect::<Vec<_>>()
        });
        let mut fixed_points = 0;
        for rep in reps.into_iter().flatten() {
            match rep {
                Ok(rep) => {
                    r.checked += rep.checks.len() * rep.fixed_points;
                    fixed_points += rep.fixed_points;
                    r.failures.extend(rep.fixed_point_failures.iter().map(|x| format!("{logic}/{mode}: {x}")));
                    r.failures.extend(rep.failures.iter().map(|c| {
                        format!(
                            "{logic}/{mode}: {}: z {} membership {}, w {} classically {}",
                            c.formula, c.z_designated, c.in_fixed_point, c.w_true, c.classically_true
                        )
                    }));
                }
                Err(e) => r.fail(format!("{logic}/{mode}: {e}")),
            }
        }
        r.notes.push(format!("{logic}/{mode}: {} models, {fixed_points} fixed points", models.len()));
    }
    r
}

pub const AUDITED: [ClassicalLogic; 6] = [
    ClassicalLogic::BM,
    ClassicalLogic::M,
    ClassicalLogic::Mn,
    ClassicalLogic::Mb,
    ClassicalLogic::Mw,
    ClassicalLogic::Mf,
];

/// Every axiom instance of each logic is a theorem of it.
pub fn axioms(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("axioms");
    for logic in AUDITED {
        let forms = corpus(cfg, logic.allows_fc());
        // split the first schematic letter across threads
        let reps = par_map(&forms, |chunk| {
            let mut out = crate::mixed::AuditReport::default();
            for schema in crate::mixed::axioms::schemas(logic) {
                if schema.arity == 0 {
                    continue;
                }
                let rest = schema.arity - 1;
                for first in chunk {
                    let mut idx = vec![0usize; rest];
                    loop {
                        let mut args = vec![first.clone()];
                        args.extend(idx.iter().map(|i| forms[*i].clone()));
                        let inst = schema.instance(&args);
                        out.instances += 1;
                        if let Decision::Countermodel(c) = decide(logic, &inst).expect("decidable") {
                            out.failures.push(crate::mixed::AuditFailure {
                                schema: schema.name,
                                instance: inst,
                                countermodel: Some(c),
                            });
                        }
                        if !crate::manyvalued::increment(&mut idx, forms.len()) {
                            break;
                        }
                    }
                }
            }
            out
        });
        let constants = axiom_audit(logic, &[]).expect("decidable");
        let mut instances = 0;
        for rep in reps.into_iter().chain([constants]) {
            instances += rep.instances;
            r.failures.extend(rep.failures.iter().map(|x| format!("{logic}: {} {}", x.schema, x.instance)));
        }
        r.checked += instances;
        r.notes.push(format!("{logic}: {instances} instances"));
    }
    r
}

/// Random derivations check and have valid roots; cut-free search never
/// derives an invalid sequent of the one-atom corpus.
pub fn calculi(cfg: SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("calculi");
    let bases = Base::ALL.to_vec();
    let parts = par_map(&bases, |chunk| {
        let mut out = SuiteReport::new("calculi");
        for base in chunk {
            let c = CalculusId::boxed(*base);
            let mut g = DerivationGenerator::new(c, GeneratorConfig::default(), cfg.seed);
            let mut rules = BTreeSet::new();
            for i in 0..cfg.samples {
                let d = g.next_derivation();
                out.checked += 1;
                rules.extend(d.rules_used());
                if let Err(e) = check_derivation(c, &d) {
                    out.fail(format!("{c}: derivation {i} rejected: {e}"));
                }
                let valid = internal_consequence(&d.sequent.ant, &d.sequent.suc, c.scheme()).map(|x| x.holds());
                if valid != Ok(true) {
                    out.fail(format!("{c}: derivation {i} has invalid root {}", d.sequent));
                }
            }
            out.notes.push(format!("{c}: {} samples used {} rules", cfg.samples, rules.len()));
            let forms = formulas(1, 2, Language { fc: *base == Base::F3, ..Language::default() });
            let all = sequents(&forms, 2);
            let rep = crosscheck_adequacy(c, &all, SearchOptions::default());
            out.checked += rep.total();
            out.failures.extend(rep.soundness_violations.iter().map(|s| format!("{c}: search derives invalid {s}")));
            out.failures.extend(rep.budget_exceeded.iter().map(|s| format!("{c}: search budget exceeded on {s}")));
            out.notes.push(format!(
                "{c}: {} sequents: {} both valid and derived, {} neither, {} valid but not derived",
                rep.total(),
                rep.both_yes,
                rep.both_no,
                rep.search_incomplete.len()
            ));
        }
        out
    });
    for p in parts {
        r.checked += p.checked;
        r.failures.extend(p.failures);
        r.notes.extend(p.notes);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            atoms: 1,
            depth: 2,
            seed: 1,
            samples: 200,
        }
    }

    #[test]
    fn fixed_suites_pass() {
        for r in [liar(), extfcon(), faith(small()), tito(small())] {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn one_atom_sweeps_pass() {
        for name in ["connecting", "modfxp", "extnrp", "maintc", "intre"] {
            let r = run(name, small()).unwrap();
            assert!(r.passed(), "{name}: {:?}", &r.failures[..r.failures.len().min(5)]);
            assert!(r.checked > 0);
        }
        assert!(run("nope", small()).is_none());
    }
}
