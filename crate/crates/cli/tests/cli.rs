use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uniform-bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("uniform-bounds-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes_follow_the_verdict() {
    assert_eq!(
        run(&["check", "--q", "5", "--n", "224", "--k", "109"])
            .status
            .code(),
        Some(10)
    );
    assert_eq!(
        run(&["check", "--q", "2", "--n", "6", "--k", "3", "--method", "lp"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "--q", "1", "--n", "6", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_report_round_trips_through_verify() {
    let out = run(&[
        "check", "--q", "4", "--n", "66", "--k", "32", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(10));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["query"]["n"], 66);

    let cert = scratch("dual.json");
    let emit = run(&[
        "check",
        "--q",
        "5",
        "--n",
        "224",
        "--k",
        "109",
        "--method",
        "dual",
        "--certificate-out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(emit.status.code(), Some(10));
    assert_eq!(
        run(&["verify", "--certificate", cert.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );

    let tampered = std::fs::read_to_string(&cert)
        .unwrap()
        .replacen("1221", "1", 1);
    let bad = scratch("dual-tampered.json");
    std::fs::write(&bad, tampered).unwrap();
    assert_eq!(
        run(&["verify", "--certificate", bad.to_str().unwrap()])
            .status
            .code(),
        Some(11)
    );
}

#[test]
fn table_output_is_independent_of_thread_count() {
    let render = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_uniform-bounds"))
            .args([
                "table", "--which", "shadow5", "--m-max", "40", "--format", "csv",
            ])
            .env("UNIFORM_BOUNDS_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = render("1");
    let four = render("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn alpha_and_theta_print_exact_values() {
    let a = run(&["alpha", "--q", "2", "--n", "14", "--i", "7"]);
    assert!(String::from_utf8_lossy(&a.stdout).contains("-1220"));
    let t = run(&["theta", "--q", "4", "--decimals", "3"]);
    assert!(String::from_utf8_lossy(&t.stdout).contains("0.479"));
}
