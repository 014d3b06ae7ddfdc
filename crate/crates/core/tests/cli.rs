use std::io::Write;
use std::process::{Command, Output, Stdio};

fn opcyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opcyl")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_opcyl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn out(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn diff_of_a_cycle_is_zero() {
    let o = opcyl(&["diff", "--presentation", "ainf", "--expr", "mu_2 o1 mu_2"]);
    assert!(o.status.success());
    assert_eq!(out(&o), "0\n");
}

#[test]
fn cyl_diff_latex() {
    let o = opcyl(&["cyl-diff", "--presentation", "ainf", "--gen", "sigma mu_3", "--format", "latex"]);
    assert!(o.status.success());
    let s = out(&o);
    assert_eq!(s.matches("tikzpicture}[").count(), 6);
    assert!(s.contains("$i_0\\mu_{3}$"));
    let o = opcyl(&["cyl-diff", "--gen", "sigma mu_3", "--format", "latex", "--layout", "nested"]);
    assert!(out(&o).contains("-\\sigma\\mu_{2}\\circ_{2}i_1\\mu_{2}"));
}

#[test]
fn verify_passes_and_fails() {
    let o = opcyl(&["verify", "sdr", "--presentation", "ainf", "--max-arity", "4", "--max-vertices", "3"]);
    assert!(o.status.success(), "{}", out(&o));
    assert!(out(&o).starts_with("PASS"));
    let o = opcyl(&["verify", "linear", "--presentation", "ainf"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verification_failure_prints_counterexample() {
    let dir = std::env::temp_dir().join(format!("opcyl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(
        &path,
        r#"{"name": "broken", "base": "initial", "generators": [
            {"name": "m", "arity": 2, "degree": 0, "stage": 0, "boundary": "0"},
            {"name": "t", "arity": 3, "degree": 1, "stage": 1, "boundary": "m o2 m - m o1 m"},
            {"name": "q", "arity": 4, "degree": 2, "stage": 2, "boundary": "t o1 m"}]}"#,
    )
    .unwrap();
    let o = opcyl(&["verify", "d2", "--presentation", path.to_str().unwrap(), "--max-arity", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let s = out(&o);
    assert!(s.starts_with("FAIL"));
    assert!(s.contains("counterexample: q"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors() {
    for args in [&["diff", "--expr", "mu_2 o3 mu_2"][..], &["verify", "bogus"], &["twist"], &["diff"]] {
        let o = opcyl(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"), "{args:?}");
    }
}

#[test]
fn json_round_trip() {
    let expr = "sigma:mu_2(i1:mu_3, id) - 2 i0:mu_4";
    let o = opcyl(&["export", "--presentation", "cyl:lambda-ainf", "--expr", expr, "--format", "json"]);
    assert!(o.status.success());
    let j = out(&o);
    let back = with_stdin(&["export", "--presentation", "cyl:lambda-ainf", "--json", "-", "--format", "json"], &j);
    assert_eq!(out(&back), j);
    let text = with_stdin(&["export", "--presentation", "cyl:lambda-ainf", "--json", "-"], &j);
    let again = opcyl(&["export", "--presentation", "cyl:lambda-ainf", "--expr", out(&text).trim()]);
    assert_eq!(out(&again), out(&text));
}

#[test]
fn double_and_reverse() {
    let o = opcyl(&["double", "--presentation", "assoc-der", "--expr", "sigma:D_2"]);
    assert_eq!(out(&o), "s0:D_2 + s1:D_2\n");
    let o = opcyl(&["reverse", "--presentation", "assoc-der", "--expr", "sigma:D_3 + i0:D_2 o1 sigma:D_2"]);
    assert!(o.status.success());
    assert_eq!(out(&o), "-i1:D_2(sigma:D_2,id) - sigma:D_3\n");
    let o = opcyl(&["reverse", "--presentation", "ainf", "--expr", "sigma:mu_4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn suspended_flag() {
    let a = opcyl(&["cyl-diff", "--presentation", "ainf", "--suspended", "--gen", "sigma:mu_4"]);
    let b = opcyl(&["cyl-diff", "--presentation", "lambda-ainf", "--gen", "sigma:mu_4"]);
    assert!(a.status.success());
    assert_eq!(out(&a), out(&b));
}
