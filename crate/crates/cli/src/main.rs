use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kfmodal::calculi::{check_derivation, prove, CalculusId, Derivation, ProofResult, SearchOptions};
use kfmodal::kftruth::{
    self, circ_realization, dagger_realization, witness_realization, Jump, Realization,
    SeedLit, Universe,
};
use kfmodal::manyvalued::{eval_truth_table, internal_consequence, Scheme};
use kfmodal::mixed::{consequence_classical, decide, ClassicalLogic, Decision, MixedModel};
use kfmodal::suites::{self, SuiteConfig};
use kfmodal::syntax::{Formula, Sequent};

#[derive(Parser)]
#[command(name = "kfmodal", version, about = "Decide, prove and translate in modal logics of truth")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of atoms in exhaustive sweeps.
    #[arg(long, global = true)]
    bound: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide theoremhood in a classical modal logic (BM-, BM, M-, M, Mn, Mb, Mw-, Mw, Mf-, Mf).
    Decide {
        #[arg(long)]
        logic: ClassicalLogic,
        #[arg(long)]
        formula: Formula,
    },
    /// Decide whether premises entail a formula at classical worlds.
    Consequence {
        #[arg(long)]
        logic: ClassicalLogic,
        #[arg(long = "premise")]
        premises: Vec<Formula>,
        #[arg(long)]
        formula: Formula,
    },
    /// Decide a sequent over idiosyncratic frames of a many-valued scheme.
    Internal {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        sequent: Sequent,
    },
    /// Search for a cut-free derivation.
    Prove {
        #[arg(long)]
        calculus: CalculusId,
        #[arg(long)]
        sequent: Sequent,
        #[arg(long, default_value_t = SearchOptions::default().budget)]
        budget: usize,
    },
    /// Check a derivation given as JSON (inline or @file).
    Check {
        #[arg(long)]
        calculus: CalculusId,
        #[arg(long)]
        derivation: String,
    },
    /// Translate a formula into the language of truth.
    Translate {
        #[arg(long)]
        formula: Formula,
        /// witness, circ, dagger or @file.json
        #[arg(long, default_value = "witness")]
        realization: String,
        /// Single-rooted model (JSON, inline or @file) for circ and dagger.
        #[arg(long)]
        model: Option<String>,
    },
    /// Compute a seeded least fixed point.
    Fixpoint {
        #[arg(long, default_value = "sk")]
        jump: Jump,
        /// Number of truth-tellers in the universe.
        #[arg(long, default_value_t = 2)]
        tellers: usize,
        /// Add the liar to the universe.
        #[arg(long)]
        liar: bool,
        /// Seed literals such as "+t0,-t1,+lam".
        #[arg(long, default_value = "")]
        seed_literals: String,
        /// Enumerate the fixed points of every teller seed instead.
        #[arg(long)]
        list_all: bool,
    },
    /// Run a named verification sweep.
    VerifyLemma {
        #[arg(long)]
        name: String,
        /// Maximum formula height.
        #[arg(long)]
        depth: Option<usize>,
        /// Random derivations per calculus.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Print the truth table of a formula.
    Table {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        formula: Formula,
    },
}

enum Failure {
    /// exit 1 with the artifact already printed
    Refuted,
    /// exit 2
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

struct Out {
    format: Format,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
            Format::Text => println!("{}", text()),
        }
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Refuted)
    }
}

fn show_decision(out: &Out, d: &Decision) -> Outcome {
    out.emit(d, || match d {
        Decision::Theorem => "theorem".into(),
        Decision::Countermodel(c) => format!("countermodel\n{}", serde_json::to_string(c).unwrap()),
    });
    verdict(d.is_theorem())
}

fn realization_for(name: &str, f: &Formula, model: Option<&str>) -> Result<Realization, Failure> {
    let model = || -> Result<MixedModel, Failure> {
        let text = read_arg(model.ok_or_else(|| usage(format!("--realization {name} needs --model")))?)?;
        serde_json::from_str(&text).map_err(usage)
    };
    match name {
        "witness" => Ok(witness_realization(f.props())),
        "circ" => circ_realization(&model()?).map_err(usage),
        "dagger" => dagger_realization(&model()?).map_err(usage),
        other if other.starts_with('@') => serde_json::from_str(&read_arg(other)?).map_err(usage),
        other => Err(usage(format!("unknown realization {other:?}"))),
    }
}

#[derive(Serialize)]
struct Translation {
    formula: Formula,
    realization: Realization,
    sentence: String,
    universe: Vec<kftruth::SentenceEntry>,
}

fn parse_seed(text: &str) -> Result<Vec<SeedLit>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<SeedLit>().map_err(usage))
        .collect()
}

#[derive(Serialize)]
struct SeededFixpoint {
    seed: String,
    #[serde(flatten)]
    dump: kftruth::FixpointDump,
}

fn run(cli: Cli) -> Outcome {
    let out = Out { format: cli.format };
    match cli.cmd {
        Cmd::Decide { logic, formula } => show_decision(&out, &decide(logic, &formula).map_err(usage)?),
        Cmd::Consequence {
            logic,
            premises,
            formula,
        } => show_decision(&out, &consequence_classical(logic, &premises, &formula).map_err(usage)?),
        Cmd::Internal { scheme, sequent } => {
            let r = internal_consequence(&sequent.ant, &sequent.suc, scheme).map_err(usage)?;
            out.emit(&r, || match &r {
                kfmodal::manyvalued::Consequence::Holds => "holds".into(),
                _ => format!("fails\n{}", serde_json::to_string(&r).unwrap()),
            });
            verdict(r.holds())
        }
        Cmd::Prove {
            calculus,
            sequent,
            budget,
        } => {
            if let Some(f) = calculus.admits_sequent(&sequent) {
                return Err(usage(format!("{f} is not in the language of {calculus}")));
            }
            let r = prove(calculus, &sequent, SearchOptions { budget });
            out.emit(&r, || match &r {
                ProofResult::Derivation(d) => serde_json::to_string_pretty(d).unwrap(),
                ProofResult::Saturated => "saturated".into(),
                ProofResult::BudgetExceeded => "budget exceeded".into(),
            });
            verdict(matches!(r, ProofResult::Derivation(_)))
        }
        Cmd::Check { calculus, derivation } => {
            let d: Derivation = serde_json::from_str(&read_arg(&derivation)?).map_err(usage)?;
            let r = check_derivation(calculus, &d);
            #[derive(Serialize)]
            struct Checked {
                valid: bool,
                error: Option<String>,
                length: usize,
                size: usize,
            }
            let c = Checked {
                valid: r.is_ok(),
                error: r.as_ref().err().map(|e| e.to_string()),
                length: d.length(),
                size: d.size(),
            };
            out.emit(&c, || match &c.error {
                None => format!("valid (length {}, size {})", c.length, c.size),
                Some(e) => format!("invalid: {e}"),
            });
            verdict(c.valid)
        }
        Cmd::Translate {
            formula,
            realization,
            model,
        } => {
            let star = realization_for(&realization, &formula, model.as_deref())?;
            let mut u: Universe = star.universe(0);
            let id = u.translate(&star, &formula).map_err(usage)?;
            let t = Translation {
                formula: formula.clone(),
                realization: star,
                sentence: u.print(id),
                universe: u.ids().map(|id| kftruth::SentenceEntry { id, form: u.print(id) }).collect(),
            };
            out.emit(&t, || t.sentence.clone());
            Ok(())
        }
        Cmd::Fixpoint {
            jump,
            tellers,
            liar,
            seed_literals,
            list_all,
        } => {
            let u = Universe::with(tellers, liar);
            let seeds = if list_all {
                kftruth::teller_seeds(tellers)
            } else {
                vec![parse_seed(&seed_literals)?]
            };
            let mut found = Vec::new();
            for seed in seeds {
                let ids = kftruth::resolve_seed(&u, &seed).map_err(usage)?;
                let text = seed.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
                match kftruth::lfp(&u, jump, &ids) {
                    Ok(fp) => found.push(SeededFixpoint {
                        seed: text,
                        dump: kftruth::dump(&u, &fp),
                    }),
                    Err(e) if !list_all => return Err(usage(e)),
                    Err(_) => {}
                }
            }
            let text = || {
                found
                    .iter()
                    .map(|s| {
                        let members: Vec<String> =
                            s.dump.members.iter().map(|i| s.dump.sentences[*i].form.clone()).collect();
                        format!(
                            "[{}] S = {{{}}} consistent={} complete={}",
                            s.seed,
                            members.join(", "),
                            s.dump.consistent,
                            s.dump.complete
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            if list_all {
                out.emit(&found, text);
            } else {
                out.emit(&found[0], text);
            }
            Ok(())
        }
        Cmd::VerifyLemma { name, depth, samples } => {
            let nabla = name == "nabla";
            let cfg = SuiteConfig {
                atoms: cli.bound.unwrap_or(if nabla { 3 } else { 2 }),
                depth: depth.unwrap_or(if nabla { 3 } else { 2 }),
                seed: cli.seed,
                samples,
            };
            let r = suites::run(&name, cfg)
                .ok_or_else(|| usage(format!("unknown suite {name:?}; known: {}", suites::NAMES.join(", "))))?;
            out.emit(&r, || {
                let mut lines = vec![format!(
                    "{} {}: {} checked, {} failures",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.name,
                    r.checked,
                    r.failures.len()
                )];
                lines.extend(r.notes.iter().map(|n| format!("  note: {n}")));
                lines.extend(r.failures.iter().take(20).map(|f| format!("  fail: {f}")));
                lines.join("\n")
            });
            verdict(r.passed())
        }
        Cmd::Table { scheme, formula } => {
            let t = eval_truth_table(&formula, scheme).map_err(usage)?;
            out.emit(&t, || {
                let mut lines = vec![format!("{} | {}", t.atoms.join(" "), formula)];
                for row in &t.rows {
                    let vals: Vec<String> = row.v.values().map(|v| v.to_string()).collect();
                    lines.push(format!("{} | {}", vals.join(" "), row.value));
                }
                lines.join("\n")
            });
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refuted) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
