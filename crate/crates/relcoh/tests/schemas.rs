//! Command output validates against the shipped JSON schemas.

use std::path::Path;

use relcoh::cli::{execute, Cli};
use clap::Parser;
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn output(args: &[&str]) -> Value {
    let cli = Cli::try_parse_from(std::iter::once("relcoh").chain(args.iter().copied())).unwrap();
    serde_json::from_str(&execute(&cli).unwrap().0).unwrap()
}

fn check(name: &str, args: &[&str]) -> Value {
    let v = output(args);
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v}");
    v
}

#[test]
fn sector_report() {
    let v = check("sector_report", &["sector", "--g", "sl2", "--p", "2", "--n", "0,0,1,1,0"]);
    assert_eq!(v["dim_H"], 1);
    check("sector_report", &["sector", "--g", "so6", "--p", "2", "--n", "0,0,1,1,0", "--timing"]);
}

#[test]
fn level_tables() {
    check("level_table", &["table", "--g", "sp4", "--level", "6"]);
    check("level_tables", &["table", "--g", "sl2", "--lmax", "5"]);
}

#[test]
fn comparison() {
    let v = check("comparison", &["compare", "--a", "so5", "--b", "sp4", "--lmax", "8"]);
    assert_eq!(v["mismatches"], serde_json::json!([]));
    check("comparison", &["compare", "--a", "sl2", "--b", "sl3", "--lmax", "6"]);
}

#[test]
fn restriction_report() {
    let v = check("restriction_report", &["restriction", "--g", "sl2", "--n", "1,1,0,0,0"]);
    assert_eq!(v["dim_kernel"], 0);
    check("restriction_report", &["restriction", "--g", "so5", "--n", "0,0,1,1,1", "--method", "monomial"]);
}

#[test]
fn class_and_fortuity_reports() {
    let v = check("class_report", &["verify", "XiF_sl2"]);
    assert_eq!((v["closed"].clone(), v["fortuitous"].clone()), (Value::Bool(true), Value::Bool(true)));
    check("fortuity_report", &["fortuitous", "--g", "sl2", "--p", "2", "--n", "0,0,1,1,0"]);
}

#[test]
fn repro_summary() {
    let v = check("repro_summary", &["repro", "--only", "7"]);
    assert_eq!(v["criteria"][0]["pass"], true);
}
