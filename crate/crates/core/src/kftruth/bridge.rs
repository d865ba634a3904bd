//! Checks that a translation reflects a single-rooted model: `z ⊩ ψ` iff
//! the translation of `ψ` is in the fixed point, and `w ⊩ ψ` iff it is
//! classically true there, for every subformula `ψ`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::*;
use crate::manyvalued::{value_at_reflexive, Polarity, Scheme, TruthValue};
use crate::mixed::{value_at_classical, MixedModel, SchemeClass};
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BridgeMode {
    /// truth-teller realization, one fixed point seeded from the model
    Witness,
    /// liar realization for gap-only models, every consistent teller seed
    Circ,
    /// liar realization for glut-only models, every complete teller seed
    Dagger,
}

impl fmt::Display for BridgeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BridgeMode::Witness => "witness",
            BridgeMode::Circ => "circ",
            BridgeMode::Dagger => "dagger",
        })
    }
}

impl FromStr for BridgeMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "witness" => Ok(BridgeMode::Witness),
            "circ" => Ok(BridgeMode::Circ),
            "dagger" => Ok(BridgeMode::Dagger),
            _ => Err(format!("unknown realization {s:?} (expected witness, circ or dagger)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubformulaCheck {
    pub formula: Formula,
    pub sentence: String,
    pub z_designated: bool,
    pub in_fixed_point: bool,
    pub w_true: bool,
    pub classically_true: bool,
}

impl SubformulaCheck {
    pub fn pass(&self) -> bool {
        self.z_designated == self.in_fixed_point && self.w_true == self.classically_true
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BridgeReport {
    pub mode: BridgeMode,
    pub scheme: Scheme,
    pub jump: Jump,
    pub realization: Realization,
    pub fixed_points: usize,
    /// Subformula checks against the first fixed point.
    pub checks: Vec<SubformulaCheck>,
    /// Failing checks over all fixed points.
    pub failures: Vec<SubformulaCheck>,
    /// Fixed points lacking the consistency or completeness the mode needs,
    /// or whose teller literals differ from their seed.
    pub fixed_point_failures: Vec<String>,
    pub notes: Vec<String>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.fixed_point_failures.is_empty()
    }
}

/// Teller seeds over `tellers` truth-tellers: for `Circ` each teller is
/// unseeded, true or false; for `Dagger` true, false or both, and the liar
/// is seeded both ways. `Witness` has the single empty seed.
pub fn seeds_for(mode: BridgeMode, tellers: usize) -> Vec<Seed> {
    let lit = |i, positive| SeedLit {
        atom: SeedAtom::Teller(i),
        positive,
    };
    let choices: Vec<Vec<bool>> = match mode {
        BridgeMode::Witness => return vec![vec![]],
        BridgeMode::Circ => vec![vec![], vec![true], vec![false]],
        BridgeMode::Dagger => vec![vec![true], vec![false], vec![true, false]],
    };
    let mut out = vec![Seed::new()];
    for i in 0..tellers {
        out = out
            .into_iter()
            .flat_map(|s| {
                choices.iter().map(move |c| {
                    let mut s = s.clone();
                    s.extend(c.iter().map(|p| lit(i, *p)));
                    s
                })
            })
            .collect();
    }
    if mode == BridgeMode::Dagger {
        for s in &mut out {
            s.push(SeedLit { atom: SeedAtom::Liar, positive: true });
            s.push(SeedLit { atom: SeedAtom::Liar, positive: false });
        }
    }
    out
}

fn nonclassical_range(m: &MixedModel) -> SchemeClass {
    match (m.scheme, m.nonclassical.first().and_then(|z| z.polarity)) {
        (Scheme::Ks3, Some(Polarity::Complete)) => SchemeClass::Complete,
        (Scheme::Ks3, _) => SchemeClass::Consistent,
        (s, _) => SchemeClass::of(s),
    }
}

pub fn verify_bridge(m: &MixedModel, f: &Formula, mode: BridgeMode) -> Result<BridgeReport, KfError> {
    verify_bridge_all(m, std::slice::from_ref(f), mode)
}

/// Runs the bridge check for every subformula of every formula in one
/// universe.
pub fn verify_bridge_all(
    m: &MixedModel,
    formulas: &[Formula],
    mode: BridgeMode,
) -> Result<BridgeReport, KfError> {
    m.validate()?;
    if m.classical.len() != 1 || m.nonclassical.len() != 1 {
        return Err(KfError::NotSingleRooted);
    }
    for f in formulas {
        m.scheme.check_formula(f).map_err(crate::mixed::MixedError::from)?;
    }
    let range = nonclassical_range(m);
    let atoms = m.atoms();
    let (star, seeds) = match mode {
        BridgeMode::Witness => (witness_realization(atoms.iter().copied()), vec![seed_from_model(m)?]),
        BridgeMode::Circ if range == SchemeClass::Consistent => {
            (circ_realization(m)?, seeds_for(mode, 2 * atoms.len()))
        }
        BridgeMode::Dagger if range == SchemeClass::Complete => {
            (dagger_realization(m)?, seeds_for(mode, 2 * atoms.len()))
        }
        BridgeMode::Circ => {
            return Err(KfError::Unsupported {
                what: "the gap realization",
                scheme: m.scheme,
            })
        }
        BridgeMode::Dagger => {
            return Err(KfError::Unsupported {
                what: "the glut realization",
                scheme: m.scheme,
            })
        }
    };
    let mut u = star.universe(2 * atoms.len());
    if mode != BridgeMode::Witness {
        u.liar();
    }
    let subs: BTreeSet<Formula> = formulas.iter().flat_map(|f| f.subformulas()).collect();
    let mut memo = HashMap::new();
    let mut ids = Vec::with_capacity(subs.len());
    for s in &subs {
        ids.push(u.translate_memo(&star, s, &mut memo)?);
    }
    let width = atoms.iter().max().map_or(0, |a| *a as usize + 1);
    let dense = |v: &crate::manyvalued::Valuation| {
        let mut out = vec![TruthValue::Zero; width];
        for (a, x) in v {
            out[*a as usize] = *x;
        }
        out
    };
    let (w, z) = (dense(&m.classical[0].valuation), dense(&m.nonclassical[0].valuation));
    let expected: Vec<(bool, bool)> = subs
        .iter()
        .map(|s| {
            (
                value_at_reflexive(m.scheme, s, &z).designated(),
                value_at_classical(m.scheme, s, &w, &z),
            )
        })
        .collect();

    let jump = Jump::for_scheme(m.scheme);
    let mut report = BridgeReport {
        mode,
        scheme: m.scheme,
        jump,
        realization: star,
        fixed_points: 0,
        checks: Vec::new(),
        failures: Vec::new(),
        fixed_point_failures: Vec::new(),
        notes: Vec::new(),
    };
    for seed in &seeds {
        let fp = lfp(&u, jump, &resolve_seed(&u, seed)?)?;
        report.fixed_points += 1;
        let seed_text = || seed.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        match mode {
            BridgeMode::Circ if !fp.consistent => {
                report.fixed_point_failures.push(format!("seed [{}]: not consistent", seed_text()))
            }
            BridgeMode::Dagger if !fp.complete => {
                report.fixed_point_failures.push(format!("seed [{}]: not complete", seed_text()))
            }
            BridgeMode::Witness => {
                let want = match range {
                    SchemeClass::Consistent => fp.consistent,
                    SchemeClass::Complete => fp.complete,
                    _ => true,
                };
                if !want {
                    report.notes.push(format!(
                        "fixed point from seed [{}] is not {}",
                        seed_text(),
                        if range == SchemeClass::Consistent { "consistent" } else { "complete" }
                    ));
                }
            }
            _ => {}
        }
        // teller literals come only from the seed
        for (i, t) in u.tellers().iter().enumerate() {
            for positive in [true, false] {
                let lit = SeedLit {
                    atom: SeedAtom::Teller(i),
                    positive,
                };
                let id = lit.resolve(&u)?;
                if fp.contains(id) != seed.contains(&lit) {
                    report
                        .fixed_point_failures
                        .push(format!("seed [{}]: {lit} (sentence {t}) membership differs", seed_text()));
                }
            }
        }
        for ((s, id), (zd, wt)) in subs.iter().zip(&ids).zip(&expected) {
            let check = SubformulaCheck {
                formula: s.clone(),
                sentence: u.print(*id),
                z_designated: *zd,
                in_fixed_point: fp.contains(*id),
                w_true: *wt,
                classically_true: classical_sat(&u, &fp, *id),
            };
            if !check.pass() {
                report.failures.push(check.clone());
            }
            if report.fixed_points == 1 {
                report.checks.push(check);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manyvalued::TruthValue::*;

    fn model(s: Scheme, w: &[TruthValue], z: &[TruthValue]) -> MixedModel {
        let v = |xs: &[TruthValue]| xs.iter().enumerate().map(|(i, x)| (i as u32, *x)).collect();
        MixedModel::single_rooted(s, v(w), v(z), None)
    }

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn seed_counts() {
        assert_eq!(seeds_for(BridgeMode::Circ, 2).len(), 9);
        assert_eq!(seeds_for(BridgeMode::Dagger, 2).len(), 9);
        assert!(seeds_for(BridgeMode::Dagger, 0)[0].len() == 2);
    }

    #[test]
    fn witness_on_a_glut() {
        let m = model(Scheme::Fde, &[One, Zero], &[B, N]);
        let r = verify_bridge(&m, &f("[](p0 /\\ ~p0) /\\ ~[]p1 -> []~~p0"), BridgeMode::Witness).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.fixed_points, 1);
    }

    #[test]
    fn witness_needs_faithfulness() {
        // w ⊮ p0 while z ⊩ p0 seeds τ1, which puts ¬p0• in the fixed point
        let m = model(Scheme::Fde, &[Zero], &[One]);
        let r = verify_bridge(&m, &f("~p0"), BridgeMode::Witness).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].in_fixed_point && !r.failures[0].z_designated);
    }

    #[test]
    fn circ_and_dagger() {
        let m = model(Scheme::K3, &[One, Zero], &[N, N]);
        let r = verify_bridge(&m, &f("[](p0 \\/ ~p1) \\/ ~[]p0"), BridgeMode::Circ).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.failures, r.fixed_point_failures);
        assert_eq!(r.fixed_points, 81);
        let m = model(Scheme::Lp, &[One, One], &[B, One]);
        let r = verify_bridge(&m, &f("[](p0 /\\ ~p0) /\\ []p1"), BridgeMode::Dagger).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.failures, r.fixed_point_failures);
        assert!(matches!(
            verify_bridge(&m, &f("p0"), BridgeMode::Circ),
            Err(KfError::Unsupported { .. })
        ));
    }

    #[test]
    fn weak_schemes_use_their_jumps() {
        let m = model(Scheme::B3, &[One, Zero], &[N, Zero]);
        let r = verify_bridge(&m, &f("[](p0 \\/ ~p1) \\/ [](p1 /\\ p0)"), BridgeMode::Circ).unwrap();
        assert_eq!(r.jump, Jump::Wk);
        assert!(r.passed(), "{:?}", r.failures);
        let m = model(Scheme::F3, &[One, Zero], &[N, Zero]);
        let r = verify_bridge(&m, &f("[](p1 ->> p0) /\\ ~[](p0 ->> p1)"), BridgeMode::Circ).unwrap();
        assert_eq!(r.jump, Jump::Af);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
