use std::process::{Command, Output};

use betazeta::identities::registry_list;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betazeta"))
        .args(args)
        .env_remove("BETAZETA_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["verify", "eq12", "--digits", "50"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "conjecture26", "2", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "conjecture29", "1", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["constants", "bogus:1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn exact_constants_print_exactly() {
    assert_eq!(stdout(&run(&["constants", "bernoulli:12"])), "-691/2730\n");
    assert_eq!(stdout(&run(&["constants", "harmonic:5"])), "137/60\n");
    assert_eq!(
        stdout(&run(&["constants", "pi", "--digits", "12"])),
        "3.141592653590\n"
    );
}

#[test]
fn verify_all_json_schema_and_order() {
    let o = run(&["verify", "all", "--digits", "30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<String> = registry_list().into_iter().map(|i| i.id).collect();
    let got: Vec<&str> = rows.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(got, ids);
    for r in &rows {
        for field in [
            "id",
            "lhs",
            "rhs",
            "abs_diff",
            "digits_agreed",
            "pass",
            "elapsed_ms",
            "digits",
            "guard",
        ] {
            assert!(r.get(field).is_some(), "missing {field}");
        }
    }
}

#[test]
fn sweep_json_fields() {
    let o = run(&[
        "sweep",
        "conjecture26",
        "1",
        "9",
        "--digits",
        "30",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 5);
    assert!(v["worst_digits_agreed"].as_i64().unwrap() >= 25);
    for field in [
        "N",
        "lhs",
        "rhs",
        "abs_diff",
        "digits_agreed",
        "pass",
        "elapsed_ms",
        "digits",
        "guard",
    ] {
        assert!(v["results"][0].get(field).is_some(), "missing {field}");
    }
}

#[test]
fn sweep_csv_header() {
    let o = run(&[
        "sweep",
        "conjecture27",
        "1",
        "9",
        "--digits",
        "30",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("N,lhs,rhs,abs_diff,digits_agreed")
    );
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn cache_round_trip_and_poison() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bz.cache");
    let p = path.to_str().unwrap();

    let warm = run(&[
        "cache",
        "warm",
        "--cache",
        p,
        "--bernoulli",
        "20",
        "--zeta",
        "15",
        "--digits",
        "30",
    ]);
    assert_eq!(
        warm.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&warm.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("B ")).count() >= 21);
    assert!(text.lines().any(|l| l.starts_with("Z 3 ")));
    assert_eq!(
        run(&["cache", "check", "--cache", p]).status.code(),
        Some(0)
    );

    let args = ["verify", "all", "--digits", "30", "--format", "csv"];
    let plain = stdout(&run(&args));
    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache", p]);
    assert_eq!(stdout(&run(&with_cache)), plain);
    // env var works as the default path
    let via_env = Command::new(env!("CARGO_BIN_EXE_betazeta"))
        .args(args)
        .env("BETAZETA_CACHE", p)
        .output()
        .unwrap();
    assert_eq!(stdout(&via_env), plain);

    std::fs::write(&path, format!("{text}B 2 1/5\n")).unwrap();
    assert_eq!(
        run(&["cache", "check", "--cache", p]).status.code(),
        Some(1)
    );
    let poisoned = run(&with_cache);
    assert_eq!(poisoned.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&poisoned.stderr).contains("rejected"));
}
