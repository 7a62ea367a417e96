use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const COMMANDS: [&str; 7] = ["pathology", "dyadic", "density", "urysohn", "cover", "integrate", "limit"];

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.json"))
}

fn lusin(args: &[&str], threads: Option<&str>, stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lusin"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn run_config(name: &str, threads: Option<&str>) -> Output {
    let path = config_path(name);
    lusin(&[name, "--config", path.to_str().unwrap()], threads, None)
}

#[test]
fn sample_configs_exit_codes() {
    for name in COMMANDS {
        let out = run_config(name, None);
        let expected = if name == "limit" { 1 } else { 0 };
        assert_eq!(out.status.code(), Some(expected), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name}: empty CSV");
    }
}

#[test]
fn output_is_deterministic() {
    for name in COMMANDS {
        let a = run_config(name, Some("1"));
        let b = run_config(name, Some("4"));
        let c = run_config(name, None);
        assert_eq!(a.stdout, b.stdout, "{name}: output depends on thread count");
        assert_eq!(a.stdout, c.stdout, "{name}: output differs between runs");
    }
}

#[test]
fn config_from_stdin_matches_file() {
    let text = std::fs::read_to_string(config_path("cover")).unwrap();
    let piped = lusin(&["cover", "--config", "-"], None, Some(&text));
    let file = run_config("cover", None);
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(piped.stdout, file.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("lusin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("cover.csv");
    let path = config_path("cover");
    let out = lusin(
        &["cover", "--config", path.to_str().unwrap(), "--out", target.to_str().unwrap()],
        None,
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&target).unwrap();
    assert!(csv.starts_with("set,eps,level,cells,symm_diff,pass\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn configuration_errors_exit_two() {
    let cases: [(&[&str], Option<&str>); 5] = [
        (&["cover", "--config", "-"], Some("{not json")),
        (&["cover", "--config", "-"], Some(r#"{"set": "[0.5,0.2)", "eps": 0.1}"#)),
        (&["density", "--config", "-"], Some("{}")),
        (&["cover", "--config", "/nonexistent/lusin.json"], None),
        (&["frobnicate"], None),
    ];
    for (args, stdin) in cases {
        let out = lusin(args, None, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn pathology_runs_without_config() {
    let out = lusin(&["pathology"], None, None);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("operation,seminorm,p,param,bound,measured,pass\n"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn limit_reports_gap_witness() {
    let out = run_config("limit", None);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("gap witness"), "{stderr}");
    let csv = String::from_utf8_lossy(&out.stdout);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert!(row[5].parse::<f64>().unwrap() >= 0.5 - 1e-9);
}
