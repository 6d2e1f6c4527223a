//! End-to-end checks of the `berkline` binary: exit codes, byte-level
//! determinism, and round-tripping of printed points.

use std::process::{Command, Output};

fn berkline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berkline"))
        .args(args)
        .env("BERKLINE_SEED", "7")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = berkline(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn eval_example_is_byte_exact() {
    let args = [
        "eval",
        "--p",
        "2",
        "--point",
        r#"{"kind":"disk","s":"0","l":"1","w":"1"}"#,
        "--poly",
        "t^2+2",
    ];
    assert_eq!(stdout(&args), "{\"logval\":\"1\"}\n");
}

#[test]
fn runs_are_deterministic() {
    for args in [
        vec!["spectrum", "--p", "2", "--N", "2", "--format", "json"],
        vec!["spectrum", "--p", "5", "--M", "4", "--format", "dot"],
        vec!["broom", "--p", "3", "--maxdeg", "2"],
        vec![
            "path", "--p", "2", "--point", r#"{"kind":"disk","s":"5","l":"inf","w":"2"}"#,
            "--point", r#"{"kind":"disk","s":"1","l":"2","w":"2"}"#, "--steps", "40",
        ],
        vec!["selftest"],
    ] {
        assert_eq!(stdout(&args), stdout(&args), "nondeterministic: {args:?}");
    }
}

#[test]
fn printed_points_reparse_to_equal_points() {
    let path = stdout(&[
        "path",
        "--p",
        "2",
        "--point",
        r#"{"kind":"disk","s":"1","l":"1","w":"2"}"#,
        "--point",
        r#"{"kind":"gamma","q":"t+1","kappa":"1/4"}"#,
        "--steps",
        "12",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&path).unwrap();
    let arr = parsed.as_array().unwrap();
    assert_eq!(arr.len(), 13);
    let p = berkline::Prime::new(2).unwrap();
    for v in arr {
        let pt = berkline::points::json::point_from_value(p, v).unwrap();
        let reprinted = berkline::points::json::point_to_value(&pt);
        let back = berkline::points::json::point_from_value(p, &reprinted).unwrap();
        assert!(berkline::points::point_eq(&pt, &back));
    }
}

#[test]
fn dist_and_nbhd_outputs() {
    let d = stdout(&[
        "dist",
        "--p",
        "2",
        "--point",
        r#"{"kind":"disk","s":"0","l":"inf","w":"1"}"#,
        "--point",
        r#"{"kind":"gamma","q":"t","kappa":"1"}"#,
        "--testset",
        "t",
    ]);
    assert_eq!(d, "{\"dist\":\"1\"}\n");
    let c = stdout(&[
        "nbhd",
        "--p",
        "2",
        "--datum",
        r#"{"kind":"n1","b":1,"tau":"1/2","eps":"1/4","m":3}"#,
        "--point",
        r#"{"kind":"disk","s":"1","l":"1/5","w":"5"}"#,
    ]);
    assert_eq!(c, "{\"contains\":true}\n");
}

#[test]
fn classify_reads_net_files() {
    let dir = std::env::temp_dir().join(format!("berkline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let net_path = dir.join("net.json");
    let samples: Vec<String> = (1..=30)
        .map(|n| format!(r#"{{"kind":"disk","s":"1","l":"1/{n}","w":"{n}"}}"#))
        .collect();
    std::fs::write(&net_path, format!("[{}]", samples.join(","))).unwrap();
    let out = stdout(&[
        "classify",
        "--p",
        "2",
        "--net",
        net_path.to_str().unwrap(),
        "--tol",
        "1e-6",
        "--tail",
        "10",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "C1");
    assert_eq!(v["parameters"]["b"], "1");
    assert_eq!(v["parameters"]["tau1"]["logval"], "1");
    assert_eq!(v["limit"]["kind"], "gamma");
    assert_eq!(v["distances"].as_array().unwrap().len(), 30);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes_follow_the_contract() {
    // validation: bad flag
    let out = berkline(&["eval", "--p", "2", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    // validation: composite p
    let out = berkline(&["broom", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    // computation: gamma point on a non-integral polynomial
    let out = berkline(&[
        "eval",
        "--p",
        "2",
        "--point",
        r#"{"kind":"gamma","q":"t","kappa":"0"}"#,
        "--poly",
        "1/2*t",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("JSON error object on stdout");
    assert_eq!(v["error"], "NotIntegral");
    // computation: unsupported path pair
    let out = berkline(&[
        "path",
        "--p",
        "2",
        "--point",
        r#"{"kind":"chain","disks":[["0","0"]],"w":"1"}"#,
        "--point",
        r#"{"kind":"disk","s":"0","l":"inf","w":"1"}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "UnsupportedPair");
    // help exits 0
    let out = berkline(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn spectrum_dot_matches_the_ray_counts() {
    let dot = stdout(&["spectrum", "--p", "2", "--N", "2", "--format", "dot"]);
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert_eq!(dot.matches("beta_bar_1").count(), 4); // declaration + 3 edges
    let dot = stdout(&["spectrum", "--p", "2", "--N", "2", "--side", "closed", "--format", "dot"]);
    assert_eq!(dot.matches(" -- ").count(), 4);
}
