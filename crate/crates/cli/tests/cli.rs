use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

const QUICK_H3: &[&str] = &["--samples", "2000", "--exact-samples", "40", "--grid", "21", "--y-grid", "5"];

#[test]
fn exit_code_matrix() {
    let bump = fixture("bump.json");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["ykc", "--a", "0", "--b", "0", "--c", "0"], 0),
        (vec!["phi-check", "--radial", "16", "--angular", "64"], 0),
        (vec!["bernstein", "--poly", &bump, "--bound", "51/100"], 0),
        (vec!["bernstein", "--poly", &bump, "--bound", "49/100"], 1),
        (vec!["bernstein", "--poly", &bump, "--bound", "1/2", "--rect", "1,0,0,1"], 2),
        (vec!["bernstein", "--poly", "/nonexistent.json", "--bound", "1"], 2),
        (vec!["bernstein", "--poly", &bump, "--bound", "1", "--strategy", "spiral"], 2),
        (vec!["ykc", "--a", "one", "--b", "0", "--c", "0"], 2),
        (vec!["coeffs", "--from", "schwarz", "--values", "[0, 0, 1]"], 2),
        (vec!["phi-check", "--radial", "1"], 2),
        (vec!["no-such-command"], 2),
    ];
    for (args, want) in cases {
        let out = hankel(&args);
        assert_eq!(code(&out), want, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn failed_certificate_exits_one() {
    let mut args = vec!["h3", "verify", "--depth", "0"];
    args.extend_from_slice(QUICK_H3);
    let out = hankel(&args);
    assert_eq!(code(&out), 1);
}

#[test]
fn identical_seeds_give_identical_json() {
    let run = |seed: &str| {
        let mut args = vec!["--json", "--seed", seed, "h3", "verify"];
        args.extend_from_slice(QUICK_H3);
        let out = hankel(&args);
        assert_eq!(code(&out), 0);
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("5"), run("5"));
    let a = hankel(&["--json", "--seed", "9", "sample", "--mode", "lz", "--count", "50"]);
    let b = hankel(&["--json", "--seed", "9", "sample", "--mode", "lz", "--count", "50"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn h3_json_reports_the_bound() {
    let mut args = vec!["--json", "h3", "verify"];
    args.extend_from_slice(QUICK_H3);
    let out = hankel(&args);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"bound\": \"1/144\""), "{text}");
    assert_eq!(json(&out)["witness"]["value"], "-1/144");
}

#[test]
fn extremal_series_text() {
    let out = hankel(&["extremal", "--omega", "z3", "--order", "7"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("z + 1/12·z^4 + 1/72·z^7"));
    let out = hankel(&["--json", "extremal", "--omega", "z2"]);
    assert_eq!(code(&out), 0);
    let text = serde_json::to_string(&json(&out)).unwrap();
    assert!(text.contains("19") && text.contains("13824"), "{text}");
}

#[test]
fn ykc_origin_and_branch() {
    let out = hankel(&["--json", "ykc", "--a", "0", "--b", "0", "--c", "0"]);
    let v = json(&out);
    assert_eq!((&v["value"]["num"], &v["value"]["den"]), (&Value::from(1), &Value::from(1)), "{v}");
    let out = hankel(&["--json", "ykc", "--a", "-1/36", "--b", "1/6", "--c", "-3/2", "--oracle"]);
    let v = json(&out);
    assert_eq!(v["branch"], "i-large-B", "{v}");
    assert_eq!((&v["value"]["num"], &v["value"]["den"]), (&Value::from(61), &Value::from(36)));
}

#[test]
fn coeffs_from_schwarz_extremal() {
    let out = hankel(&["--json", "coeffs", "--from", "schwarz", "--values", "[0, 0, 1, 0]"]);
    assert_eq!(code(&out), 0);
    let text = serde_json::to_string(&json(&out)).unwrap();
    let h3 = &json(&out)["h3"];
    assert_eq!((&h3["num"], &h3["den"]), (&Value::from(-1), &Value::from(144)), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hankel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("samples.jsonl");
    let out = hankel(&["--out", path.to_str().unwrap(), "sample", "--count", "5"]);
    assert_eq!(code(&out), 0);
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 5);
    for line in body.lines() {
        serde_json::from_str::<Value>(line).unwrap();
    }
    std::fs::remove_dir_all(dir).ok();
}
