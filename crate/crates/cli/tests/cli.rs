use canmod_cli::app::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use canmod_cli::data::{ReferenceData, FILES};
use serde_json::Value;
use std::process::Command;

fn canmod(args: &[&str]) -> canmod_cli::app::Outcome {
    run(std::iter::once("canmod").chain(args.iter().copied()))
}

fn schema() -> Value {
    serde_json::from_str(include_str!("../../../docs/report.schema.json")).unwrap()
}

/// Validates the subset of JSON Schema used by the report schema.
fn validate(v: &Value, s: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return validate(v, &root["$defs"][name], root, path);
    }
    if let Some(options) = s.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return Err(format!("{path}: {v} not in {options:?}"));
        }
    }
    match s.get("type").and_then(Value::as_str) {
        Some("object") => {
            let obj = v.as_object().ok_or(format!("{path}: not an object"))?;
            for k in s["required"].as_array().into_iter().flatten() {
                let k = k.as_str().unwrap();
                if !obj.contains_key(k) {
                    return Err(format!("{path}: missing {k}"));
                }
            }
            let props = s["properties"].as_object().unwrap();
            for (k, child) in obj {
                match props.get(k) {
                    Some(ps) => validate(child, ps, root, &format!("{path}.{k}"))?,
                    None if s["additionalProperties"] == Value::Bool(false) => return Err(format!("{path}: unexpected key {k}")),
                    None => {}
                }
            }
        }
        Some("array") => {
            for (i, item) in v.as_array().ok_or(format!("{path}: not an array"))?.iter().enumerate() {
                validate(item, &s["items"], root, &format!("{path}[{i}]"))?;
            }
        }
        Some("string") if !v.is_string() => return Err(format!("{path}: not a string")),
        Some("integer") => {
            let n = v.as_i64().ok_or(format!("{path}: not an integer"))?;
            if let Some(min) = s.get("minimum").and_then(Value::as_i64) {
                if n < min {
                    return Err(format!("{path}: {n} < {min}"));
                }
            }
        }
        _ => {}
    }
    Ok(())
}

#[test]
fn reference_data_round_trips() {
    let d = ReferenceData::embedded();
    let again = ReferenceData::from_texts(&d.to_texts()).unwrap();
    assert_eq!(d, again);
}

#[test]
fn every_reference_entry_has_a_citation() {
    let d = ReferenceData::embedded();
    let mut cites: Vec<&str> = Vec::new();
    cites.extend(d.traces.entries.iter().map(|e| e.citation.as_str()));
    cites.extend(d.groups.entries.iter().map(|e| e.citation.as_str()));
    cites.extend(d.monodromy.entries.iter().map(|e| e.citation.as_str()));
    cites.push(&d.monodromy.decomposition.citation);
    cites.extend(d.belyi.entries.iter().map(|e| e.citation.as_str()));
    cites.extend(d.models.entries.iter().map(|e| e.citation.as_str()));
    cites.extend(d.qexp.entries.iter().map(|e| e.citation.as_str()));
    cites.extend(d.orders.entries.iter().map(|e| e.citation.as_str()));
    assert_eq!(cites.len(), 29);
    assert!(cites.iter().all(|c| !c.trim().is_empty()));
}

#[test]
fn qexp_case_one_lists_the_x_series() {
    let out = canmod(&["qexp", "--case", "I", "--precision", "8"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert!(out.stdout.contains("q^{-1/5} + 16 + 134 q^{1/5}"), "{}", out.stdout);
}

#[test]
fn verify_all_json_passes_and_matches_schema() {
    let out = canmod(&["verify-all", "--case", "all", "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert_eq!(out.stdout.matches("\"monodromy: conjugate to Table 3: true\"").count(), 4);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let s = schema();
    validate(&v, &s, &s, "report").unwrap();
    assert_eq!(v["counts"]["fail"], 0);
    let discrepancies: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["stages"].as_array().unwrap())
        .flat_map(|s| s["checks"].as_array().unwrap())
        .filter(|c| c["status"] == "discrepancy")
        .map(|c| c["summary"].as_str().unwrap())
        .collect();
    assert_eq!(discrepancies.len(), 2, "{discrepancies:?}");
}

#[test]
fn reports_are_deterministic() {
    let a = canmod(&["verify-all", "--format", "json"]);
    let b = canmod(&["verify-all", "--format", "json"]);
    assert_eq!(a, b);
    let t1 = canmod(&["orders", "--case", "III"]);
    let t2 = canmod(&["orders", "--case", "III"]);
    assert_eq!(t1, t2);
}

#[test]
fn timing_is_opt_in() {
    let plain = canmod(&["reconstruct", "--case", "IV", "--format", "json"]);
    assert!(!plain.stdout.contains("millis"));
    let timed = canmod(&["reconstruct", "--case", "IV", "--format", "json", "--timing"]);
    assert!(timed.stdout.contains("\"millis\""));
}

#[test]
fn invalid_case_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_canmod")).args(["monodromy", "--case", "V"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown case"));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(canmod(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(canmod(&["qexp", "--precision", "0"]).code, EXIT_USAGE);
    assert_eq!(canmod(&["qexp", "--format", "yaml"]).code, EXIT_USAGE);
    let help = canmod(&["--help"]);
    assert_eq!(help.code, EXIT_PASS);
    assert!(help.stdout.contains("verify-all"));
}

#[test]
fn missing_data_dir_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = canmod(&["reconstruct", "--data-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("cannot read"));
}

fn write_data(dir: &std::path::Path, edit: impl Fn(&str, String) -> String) {
    let d = ReferenceData::embedded();
    for (f, text) in FILES.iter().zip(d.to_texts()) {
        std::fs::write(dir.join(f), edit(f, text)).unwrap();
    }
}

#[test]
fn altered_reference_value_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    write_data(dir.path(), |f, t| if f == "traces.json" { t.replacen("\"radicand\": 5", "\"radicand\": 7", 1) } else { t });
    let out = canmod(&["reconstruct", "--case", "I", "--data-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("fail        reconstruct: Tr(α)"), "{}", out.stdout);
}

#[test]
fn unaltered_data_dir_matches_embedded() {
    let dir = tempfile::tempdir().unwrap();
    write_data(dir.path(), |_, t| t);
    let a = canmod(&["monodromy", "--data-dir", dir.path().to_str().unwrap()]);
    let b = canmod(&["monodromy"]);
    assert_eq!(a, b);
}

#[test]
fn unsupported_data_version_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_data(dir.path(), |f, t| if f == "models.json" { t.replacen("\"version\": 1", "\"version\": 2", 1) } else { t });
    let out = canmod(&["qexp", "--data-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("unsupported version 2"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = canmod(&["belyi", "--case", "III", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["cases"][0]["case"], "III");
    assert_eq!(v["cases"][0]["stages"][0]["stage"], "belyi");
}
