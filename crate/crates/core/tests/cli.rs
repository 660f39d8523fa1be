use std::process::Command;

fn hurwitz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz")).args(args).env_remove("HURWITZ_CACHE").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn cutjoin_prints_rationals() {
    assert_eq!(hurwitz(&["cutjoin", "--a", "2", "--g", "0", "--mu", "4"]).1, "1/2\n");
    assert_eq!(hurwitz(&["cutjoin", "--a", "2", "--g", "0", "--mu", "3"]).1, "0\n");
    assert_eq!(hurwitz(&["cutjoin", "--a", "1", "--g", "1", "--mu", "2,1"]).1, "10\n");
}

#[test]
fn exit_statuses() {
    assert_eq!(hurwitz(&["qcurve", "--a", "1", "--xorder", "3", "--horder", "4"]).0, 0);
    // beyond the enumeration budget
    assert_eq!(hurwitz(&["oracle", "--a", "1", "--g", "0", "--mu", "12"]).0, 1);
    assert_eq!(hurwitz(&["polycheck", "--a", "2", "--g", "1", "--n", "1"]).0, 2);
    assert_eq!(hurwitz(&["nonsense"]).0, 2);
    let (code, _, err) = hurwitz(&["toprec", "--a", "1", "--g", "0", "--n", "2", "--flag"]);
    assert_eq!(code, 2);
    assert!(err.contains("--flag"));
}

#[test]
fn toprec_json_schema() {
    let (code, out, _) =
        hurwitz(&["toprec", "--a", "2", "--g", "0", "--n", "3", "--mu-max", "3", "--prec", "256", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 27);
    for e in entries {
        assert!(e["mu"].is_array());
        assert!(e["tr"].is_string() && e["abs_err"].is_string());
        assert!(e["cutjoin"].as_str().unwrap().parse::<i64>().is_ok() || e["cutjoin"].as_str().unwrap().contains('/'));
        assert_eq!(e["exact"], serde_json::Value::Bool(true));
    }
    assert!(v["convention"].as_str().unwrap().contains("-y dx"));
}

#[test]
fn warm_cache_output_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.txt");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hurwitz"))
            .args(["polycheck", "--a", "2", "--g", "0", "--n", "3", "--bound", "6", "--json"])
            .env("HURWITZ_CACHE", &path)
            .output()
            .unwrap()
    };
    let cold = run();
    assert!(path.exists());
    let warm = run();
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn seeded_random_checks_are_reproducible() {
    let args = ["oracle", "--a", "1", "--g", "0", "--mu", "2,1", "--random", "10", "--seed", "42", "--json"];
    let (c1, o1, _) = hurwitz(&args);
    let (c2, o2, _) = hurwitz(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
}

#[test]
fn verify_all_subset() {
    let (code, out, _) = hurwitz(&["verify-all", "--only", "2,8,10"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3);
}
