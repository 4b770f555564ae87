use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quante2")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "hopf-axioms"]).status.code(), Some(0));
    assert_eq!(run(&["check", "jacobi"]).status.code(), Some(2));
    assert_eq!(run(&["check", "nope"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["check", "all", "--param", "w=0"]).status.code(), Some(3));
    assert_eq!(run(&["bracket", "std-poisson", "n"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn json_report_to_file() {
    let dir = std::env::temp_dir().join(format!("quante2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = run(&["check", "all", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["records"].as_array().unwrap().len() > 100);
    let o = run(&["check", "all", "--out", "/nonexistent/dir/report.txt"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn element_commands() {
    let o = run(&["bracket", "std-poisson", "n", "nb"]);
    assert_eq!(stdout(&o), "n*nb\n");
    let o = run(&["normal-form", "qe2-nonstd", "nb*n"]);
    assert_eq!(stdout(&o), "n*nb - w*nb + w*n\n");
    let o = run(&["delta", "fun-e2", "v"]);
    assert_eq!(stdout(&o), "v (x) v\n");
    let o = run(&["antipode", "fun-e2", "n"]);
    assert_eq!(stdout(&o), "-v*n\n");
    let o = run(&["rank", "nonstd-poisson", "--at", "v=i,n=0,nb=0", "--param", "w=1"]);
    assert_eq!(stdout(&o), "2\n");
    let o = run(&["solve-family", "coaction-plane", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "z*zb + c1*(1)");
    let o = run(&["presets"]);
    assert!(stdout(&o).lines().count() >= 15);
}

#[test]
fn file_presentation() {
    let path = std::env::temp_dir().join(format!("quante2-file-{}.json", std::process::id()));
    std::fs::write(&path, include_str!("../../core/presets/std-poisson.json")).unwrap();
    let o = run(&["bracket", "--file", path.to_str().unwrap(), "n", "nb"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "n*nb\n");
}
