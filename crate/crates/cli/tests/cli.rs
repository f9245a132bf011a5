use std::process::Command;

fn cosimplex(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cosimplex")).args(args).env_remove("COSIMPLEX_CACHE").output().expect("binary runs")
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn counterexample_reports_four_and_two_components() {
    let o = cosimplex(&["counterexample", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("\"schema_version\":1"));
    assert!(text.contains("\"pi0_lx_11\":4") && text.contains("\"pi0_w_11\":2"), "{text}");
}

#[test]
fn json_output_is_deterministic_without_timing() {
    let a = stdout(&cosimplex(&["run", "factorization", "--format", "json", "--trunc", "2"]));
    let b = stdout(&cosimplex(&["run", "factorization", "--format", "json", "--trunc", "2"]));
    assert_eq!(a, b);
    assert!(!a.contains("millis"));
}

#[test]
fn table_output_lists_instances() {
    let o = cosimplex(&["run", "factorization", "--arity", "3", "--trunc", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("n=3 k=1") && text.contains("0 failed"), "{text}");
}

#[test]
fn unknown_suite_and_bad_config_fail() {
    let o = cosimplex(&["run", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
    let o = cosimplex(&["run", "factorization", "--cap", "1", "--check-dim", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_then_validate_round_trips() {
    let dir = std::env::temp_dir().join(format!("cosimplex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (what, expect) in [("standard", "multicosimplicial"), ("corpus", "corpus of")] {
        let path = dir.join(format!("{what}.json"));
        let o = cosimplex(&["export", what, "--trunc", "1", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let o = cosimplex(&["validate", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(expect));
    }
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\"schema_version\": 1,\n \"kind\": \"simplicial_set\", \"dim_cap\": }").unwrap();
    let o = cosimplex(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_file_drives_a_suite() {
    let dir = std::env::temp_dir().join(format!("cosimplex-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    assert!(cosimplex(&["export", "zero-skeleton", "--out", path.to_str().unwrap()]).status.success());
    let o = cosimplex(&["run", "tot-diagonal", "--corpus", path.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
