use std::process::{Command, Output};

fn coideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coideal"))
        .args(args)
        .env_remove("SUITE")
        .env_remove("CHECKS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn b3_suite_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b3.json");
    let o = coideal(&["--suite", "I-B3", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert!(!rows.is_empty());
    for r in &rows {
        for key in ["suite", "check", "identity", "status", "ms", "max_terms"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
        assert_eq!(r["status"], "pass");
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |p: &std::path::Path| {
        let mut rows: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        for r in &mut rows {
            r.as_object_mut().unwrap().remove("ms");
        }
        rows
    };
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert_eq!(coideal(&["--suite", "II-A6", "--checks", "relations,torus", "--json", p.to_str().unwrap()]).status.code(), Some(0));
    }
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn check_filter() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("smash.json");
    let o = coideal(&["--suite", "III-A7", "--checks", "smash", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!rows.is_empty() && rows.iter().all(|r| r["check"] == "smash"));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(coideal(&["--suite", "I-Z9"]).status.code(), Some(2));
    assert_eq!(coideal(&["--suite", "I-B3", "--checks", "nonsense"]).status.code(), Some(2));
    assert_eq!(coideal(&["--suite", "I-B3", "--mem-limit", "lots"]).status.code(), Some(2));
}

#[test]
fn env_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_coideal"))
        .env("SUITE", "I-C3")
        .env("CHECKS", "relations")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("I-C3: 6 rows"), "{}", stdout(&o));
}

#[test]
fn budget_skips_need_allow_skip() {
    let o = coideal(&["--suite", "I-B3", "--time-budget", "0.000001s"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("skipped"));
    let o = coideal(&["--suite", "I-B3", "--time-budget", "0.000001s", "--allow-skip"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn memory_ceiling_reports_skipped_not_fail() {
    let o = coideal(&["--suite", "I-B3", "--checks", "braid", "--mem-limit", "1M"]);
    let out = stdout(&o);
    assert!(!out.lines().any(|l| l.starts_with("fail")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("skipped")), "{out}");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn g2_without_long() {
    let o = coideal(&["--suite", "I-G2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("requires --long"));
}

#[test]
fn eval_lines() {
    let o = coideal(&["eval", "--type", "A1", "nf(E1*F1)"]);
    assert_eq!(stdout(&o).trim(), "F1*E1 + (K1 - K1^-1)/(q - q^-1)");
    let o = coideal(&["eval", "--case", "I-B3", "tau(1,-, B2)"]);
    assert_eq!(stdout(&o).trim(), "-q^2*B2*B1 + B1*B2");
    let o = coideal(&["eval", "--case", "II-A7", "nf(B1*B7 - B7*B1)"]);
    assert_eq!(stdout(&o).trim(), "(K1*K7^-1 - K1^-1*K7)/(q - q^-1)");
    let o = coideal(&["eval", "--type", "A2", "nf(E1*(F1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 10"));
}
