//! Replays the checked-in fuzz seeds through the same entry points the fuzz
//! targets drive, so the seeds stay meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use quante2::catalog::{get_preset, load_preset_str};
use quante2::exprio::{elaborate_expr, elaborate_poly, format_poly, parse_expr, parse_poly};
use quante2::suites::parse_value;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {}", dir.display(), e))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {}", target);
    out
}

#[test]
fn parse_expr_seeds() {
    for s in seeds("parse_expr") {
        assert!(parse_expr(&s).is_ok(), "{:?}", s);
    }
}

#[test]
fn elaborate_seeds() {
    let pre = get_preset("qe2-nonstd").unwrap();
    let t = pre.tower().unwrap();
    for s in seeds("elaborate") {
        let ast = parse_expr(&s).unwrap();
        let _ = elaborate_poly(&ast, t);
        let _ = elaborate_expr(&ast, &[t.as_ref(), t.as_ref()]);
    }
}

#[test]
fn preset_json_seeds() {
    for s in seeds("preset_json") {
        load_preset_str(&s).unwrap_or_else(|e| panic!("{}: {}", e, s));
    }
}

#[test]
fn format_roundtrip_seeds() {
    let pre = get_preset("qe2-nonstd").unwrap();
    let t = pre.tower().unwrap();
    for s in seeds("format_roundtrip") {
        let x = parse_poly(&s, t).unwrap();
        assert_eq!(parse_poly(&format_poly(&x, t), t).unwrap(), x, "{:?}", s);
    }
}

#[test]
fn parse_value_seeds() {
    for s in seeds("parse_value") {
        assert!(parse_value(&s).is_ok(), "{:?}", s);
    }
}
