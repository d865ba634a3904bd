use std::process::{Command, Output};

fn kfmodal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kfmodal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theorem_exits_zero() {
    let o = kfmodal(&["decide", "--logic", "Mn", "--formula", "[]p0 -> p0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "theorem");
}

#[test]
fn refutation_exits_one_with_a_countermodel() {
    let o = kfmodal(&["--format", "json", "decide", "--logic", "BM", "--formula", "[]p0 -> p0"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "countermodel");
    assert_eq!(v["w"]["p0"], 0);
    assert!(v["z"]["p0"] == "b" || v["z"]["p0"] == 1);
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["decide", "--logic", "BM", "--formula", "[]p0 ->"][..],
        &["decide", "--logic", "nope", "--formula", "p0"][..],
        &["translate", "--formula", "p0", "--realization", "circ"][..],
        &["frobnicate"][..],
    ] {
        let o = kfmodal(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "--seed", "7", "decide", "--logic", "Mf", "--formula", "(p0 ->> p1) -> []p1"];
    let a = kfmodal(&args);
    let b = kfmodal(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn prove_then_check() {
    let proof = kfmodal(&["--format", "json", "prove", "--calculus", "K3_box", "--sequent", "[]p0 => []p0, p1"]);
    assert_eq!(proof.status.code(), Some(0));
    let json = stdout(&proof);
    let ok = kfmodal(&["check", "--calculus", "K3_box", "--derivation", &json]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let broken = json.replacen("\"ref\"", "\"∧l\"", 1);
    let bad = kfmodal(&["check", "--calculus", "K3_box", "--derivation", &broken]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn unprovable_sequent_saturates() {
    let o = kfmodal(&["prove", "--calculus", "K3_box", "--sequent", "p0 => p1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fixpoint_respects_the_seed() {
    let o = kfmodal(&["--format", "json", "fixpoint", "--jump", "sk", "--tellers", "1", "--liar", "--seed-literals", "+t0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let forms: Vec<String> = v["S"]
        .as_array()
        .unwrap()
        .iter()
        .map(|id| {
            let id = id.as_u64().unwrap() as usize;
            v["sentences"][id]["form"].as_str().unwrap().to_owned()
        })
        .collect();
    assert!(forms.iter().any(|f| f.starts_with("T(")), "{forms:?}");
    assert!(!forms.iter().any(|f| f.starts_with("not T(")), "{forms:?}");
    assert_eq!(v["consistent"], true);

    let empty = kfmodal(&["--format", "json", "fixpoint", "--jump", "wk", "--tellers", "1", "--liar"]);
    let v: serde_json::Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert!(v["S"].as_array().unwrap().is_empty());
}

#[test]
fn translate_maps_boxed_atoms_to_truth_ascriptions() {
    let model = r#"{"classical":[{"successor":0,"valuation":{"p0":1}}],"nonclassical":[{"valuation":{"p0":"n"}}],"scheme":"k3"}"#;
    let o = kfmodal(&["--format", "json", "translate", "--formula", "[]p0", "--realization", "circ", "--model", model]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["realization"]["p0"], "lam");
    assert!(v["sentence"].as_str().unwrap().starts_with("T("));
}

#[test]
fn lemma_runner_reports_pass() {
    let o = kfmodal(&["verify-lemma", "--name", "liar"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}
