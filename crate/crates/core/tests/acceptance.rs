//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion listed in `KNOWN_FAILURES` prints FAIL but does not fail the
//! run, provided its failures are exactly the documented kind; any other
//! failure, an unexpected pass of a known failure, or a blown time limit
//! fails the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kfmodal::manyvalued::TruthValue;
use kfmodal::mixed::{decide, ClassicalLogic, Decision};
use kfmodal::suites::{self, SuiteConfig, SuiteReport};
use kfmodal::syntax::Formula;

const AXIOM_LIMIT: Duration = Duration::from_secs(30);
const CONNECTING_LIMIT: Duration = Duration::from_secs(60);
const BRIDGE_LIMIT: Duration = Duration::from_secs(120);
const TOTAL_LIMIT: Duration = Duration::from_secs(300);
const SAMPLES: usize = 10_000;
const SEED: u64 = 2024;

/// Criteria that cannot hold as stated; see the README.
const KNOWN_FAILURES: &[u32] = &[1, 5];

struct Outcome {
    pass: bool,
    /// For a known failure: the failures are the documented ones.
    as_documented: bool,
    detail: String,
}

impl Outcome {
    fn plain(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            as_documented: false,
            detail: detail.into(),
        }
    }
}

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

fn cfg(atoms: u32, depth: usize) -> SuiteConfig {
    SuiteConfig {
        atoms,
        depth,
        seed: SEED,
        samples: SAMPLES,
    }
}

fn summary(r: &SuiteReport) -> String {
    let mut s = format!("{} checked, {} failures", r.checked, r.failures.len());
    if let Some(first) = r.failures.first() {
        s += &format!("; first: {first}");
    }
    s
}

fn timed(r: &SuiteReport, took: Duration, limit: Duration) -> Outcome {
    let in_time = took <= limit;
    Outcome::plain(
        r.passed() && in_time,
        format!("{}; {:.1}s (limit {}s)", summary(r), took.as_secs_f64(), limit.as_secs()),
    )
}

fn axiom_audit() -> Outcome {
    let start = Instant::now();
    let r = suites::axioms(cfg(2, 2));
    let took = start.elapsed();
    let mut out = timed(&r, took, AXIOM_LIMIT);
    // faith fails in BM when its argument joins a glut with a gap: n ∨ b = 1
    out.as_documented = !r.failures.is_empty()
        && took <= AXIOM_LIMIT
        && r.failures.iter().all(|x| x.starts_with("BM: faith ") && x.contains("\\/"));
    out
}

fn faith_separation() -> Outcome {
    let faith = f("[]p0 /\\ ~[]~p0 -> p0");
    let minus = decide(ClassicalLogic::BMMinus, &faith).unwrap();
    let expected = minus.countermodel().is_some_and(|c| {
        c.z.get(&0) == Some(&TruthValue::One) && c.w.get(&0) == Some(&TruthValue::Zero)
    });
    let bm = decide(ClassicalLogic::BM, &faith).unwrap().is_theorem();
    Outcome::plain(
        expected && bm,
        format!("BM- countermodel z(p0)=1, w(p0)=0: {expected}; BM theorem: {bm}"),
    )
}

fn derived_theorems() -> Outcome {
    let cases = [
        (ClassicalLogic::M, "([]p0 -> p0) \\/ (p1 -> []p1)"),
        (ClassicalLogic::Mn, "[]p0 -> p0"),
        (ClassicalLogic::Mb, "p0 -> []p0"),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (logic, text) in cases {
        let theorem = decide(logic, &f(text)).unwrap().is_theorem();
        let in_bm = decide(ClassicalLogic::BM, &f(text)).unwrap();
        let refuted = matches!(in_bm, Decision::Countermodel(_));
        ok &= theorem && refuted;
        notes.push(format!("{logic} ⊢ {text}: {theorem}, BM refutes: {refuted}"));
    }
    Outcome::plain(ok, notes.join("; "))
}

fn connecting() -> Outcome {
    let start = Instant::now();
    let r = suites::connecting(cfg(2, 2));
    timed(&r, start.elapsed(), CONNECTING_LIMIT)
}

fn nabla() -> Outcome {
    let r = suites::nabla(cfg(3, 3));
    let mut out = Outcome::plain(r.passed(), summary(&r));
    // every violation involves a constant: either no atoms at all, or a
    // constant fixing the value of a weak-Kleene compound
    out.as_documented = !r.failures.is_empty()
        && r.failures.iter().all(|x| {
            let formula = x.split(": ").nth(1).unwrap_or("");
            formula.contains('T') || formula.contains('F')
        });
    out
}

fn calculi() -> Outcome {
    let r = suites::calculi(cfg(1, 2));
    Outcome::plain(r.passed(), summary(&r))
}

fn liar() -> Outcome {
    let r = suites::liar();
    Outcome::plain(r.passed(), summary(&r))
}

fn main_lemma() -> Outcome {
    let start = Instant::now();
    let (z_side, w_side) = suites::witness_bridge_for(cfg(2, 2), &[ClassicalLogic::BM]);
    let took = start.elapsed();
    let pass = z_side.passed() && w_side.passed() && took <= BRIDGE_LIMIT;
    Outcome::plain(
        pass,
        format!(
            "membership: {}; classical truth: {}; {:.1}s (limit {}s)",
            summary(&z_side),
            summary(&w_side),
            took.as_secs_f64(),
            BRIDGE_LIMIT.as_secs()
        ),
    )
}

fn liar_bridges() -> Outcome {
    let r = suites::intre(cfg(2, 2));
    Outcome::plain(r.passed(), summary(&r))
}

fn external_collapse() -> Outcome {
    let r = suites::extfcon();
    Outcome::plain(r.passed(), format!("{}; {}", summary(&r), r.notes.join("; ")))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "axiom audit", axiom_audit),
        (2, "faith separation", faith_separation),
        (3, "derived theorems", derived_theorems),
        (4, "connecting sweep", connecting),
        (5, "nabla property", nabla),
        (6, "calculi soundness", calculi),
        (7, "liar facts", liar),
        (8, "witness bridge", main_lemma),
        (9, "liar bridges", liar_bridges),
        (10, "external collapse of ->>", external_collapse),
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let known = KNOWN_FAILURES.contains(&n);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = match (o.pass, known) {
            (false, true) if o.as_documented => " [known: failures match the documented analysis]",
            (false, true) => " [known failure, but not as documented]",
            (true, true) => " [expected to fail]",
            _ => "",
        };
        println!("{tag} {n:>2} {name}: {} ({:.1}s){note}", o.detail, t.elapsed().as_secs_f64());
        if (!o.pass && !(known && o.as_documented)) || (o.pass && known) {
            unexpected += 1;
        }
    }
    let total = start.elapsed();
    let in_time = total <= TOTAL_LIMIT;
    println!(
        "{} total runtime {:.1}s (limit {}s)",
        if in_time { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        TOTAL_LIMIT.as_secs()
    );
    if unexpected == 0 && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
