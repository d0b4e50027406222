use std::process::{Command, Output};

use pericat::{FormalChar, Parabolic};

fn pericat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pericat"))
        .args(args)
        .env_remove("PERICAT_FIXTURES")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn documented_examples() {
    let o = pericat(&["blocks", "--composition", "2,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "6");

    let o = pericat(&["tilting", "--weight", "-1,1,5"]);
    assert_eq!(
        stdout(&o),
        r#"{"basis":"nabla","terms":[{"weight":["-1","1","5"],"coeff":1}]}"#
    );

    let o = pericat(&["block", "--weight", "1,0,0"]);
    assert_eq!(
        stdout(&o),
        r#"{"label":[{"key":"0","size":3,"odd":1}],"canonical":"1,0,0"}"#
    );
}

#[test]
fn theta_doubles_a_table_entry() {
    let t = stdout(&pericat(&["tilting", "--weight", "0,-1,1"]));
    let dir = tempdir();
    let path = dir.join("t.json");
    std::fs::write(&path, &t).unwrap();
    let o = pericat(&["theta", "--a", "-1", "--char", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = FormalChar::from_json(&stdout(&o)).unwrap();
    let t = FormalChar::from_json(&t).unwrap();
    assert!(out.iter().all(|(_, _, c)| c == 2), "{out}");
    assert_eq!(out.len(), 3);
    assert!(!t.is_zero());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn outputs_round_trip() {
    for args in [
        vec!["tilting", "--weight", "0,1,-3"],
        vec!["tilting", "--weight", "1,0,2", "--parabolic", "2,1"],
        vec!["tilting", "--weight", "0,1,1/2", "--basis", "delta"],
        vec!["char", "--weight", "0,1,2"],
    ] {
        let o = pericat(&args);
        assert!(
            o.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let text = stdout(&o);
        let chi = FormalChar::from_json(&text).unwrap();
        assert_eq!(
            chi.to_json(&pericat::Basis::Nabla(Parabolic::borel(3)))
                .unwrap(),
            text
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        pericat(&["tilting", "--weight", "1,x,2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pericat(&["kl", "--n", "3", "--x", "123", "--w", "1234"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pericat(&["frobnicate"]).status.code(), Some(2));
    let o = pericat(&["tilting", "--weight", "0,1,0,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("weakly typical"));
    let o = pericat(&["tilting", "--weight", "-1/2,0,1/2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(pericat(&["--help"]).status.success());
    assert!(stdout(&pericat(&["--help"])).contains("ρ"));
}

#[test]
fn small_queries() {
    assert_eq!(
        stdout(&pericat(&["kl", "--n", "4", "--x", "1324", "--w", "3412"])),
        "1+q^1"
    );
    assert_eq!(
        stdout(&pericat(&["mult", "--verma", "2,1,0", "--simple", "0,1,2"])),
        "1"
    );
    assert_eq!(
        stdout(&pericat(&[
            "mult",
            "--verma",
            "2,1,0",
            "--simple",
            "0,1,2",
            "--parabolic",
            "2,1"
        ])),
        "0"
    );
    assert_eq!(
        stdout(&pericat(&[
            "mult",
            "--verma",
            "2,1,0",
            "--simple",
            "2,0,1",
            "--parabolic",
            "2,1"
        ])),
        "1"
    );
    let o = pericat(&["blocks", "--composition", "1,1", "--labels"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn verify_suites_are_deterministic() {
    for suite in ["appendix", "thmD", "props"] {
        let a = pericat(&["verify", suite]);
        assert_eq!(a.status.code(), Some(0), "{suite}: {}", stdout(&a));
        assert_eq!(stdout(&a), stdout(&pericat(&["verify", suite])));
    }
    let o = pericat(&["verify", "pe3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1), "the Δ-multiplicity line fails");
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["Δ-multiplicities at most one"]);
}

#[test]
fn fixture_override() {
    let dir = tempdir();
    let only_51 = dir.join("only.json");
    std::fs::write(
        &only_51,
        r#"{"version":1,"families":[{"id":"5.1","parabolic":[1,1,1],"params":{"b":{"domain":"int","gt":2}},"hw":"0,1,b","terms":[["0,1,b",1],["-1,0,b",1]]}],"facts":[]}"#,
    )
    .unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"version":1,"families":[{"id":"x","parabolic":[1,1,1],"params":{},"hw":"0,1","terms":[["0,1",1]]}],"facts":[]}"#).unwrap();
    let with = |path: &std::path::Path, w: &str| {
        Command::new(env!("CARGO_BIN_EXE_pericat"))
            .args(["tilting", "--weight", w])
            .env("PERICAT_FIXTURES", path)
            .output()
            .unwrap()
    };
    let o = with(&only_51, "0,1,4");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        stdout(&pericat(&["tilting", "--weight", "0,1,4"]))
    );
    assert!(pericat(&["tilting", "--weight", "0,1,-3"]).status.success());
    assert_eq!(
        with(&only_51, "0,1,-3").status.code(),
        Some(3),
        "row (5.3) is absent from the override"
    );
    assert_ne!(with(&bad, "0,1,2").status.code(), Some(0));
    std::fs::remove_dir_all(dir).ok();
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!(
        "pericat-cli-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&d).unwrap();
    d
}
