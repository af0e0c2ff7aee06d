#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(format!("{name}.json"))
}

pub fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_localizer"));
    c.args(args).env_remove("LOCALIZER_EPS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("localizer runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Preprocesses a fixture into `dir`, returning the artifact path.
pub fn artifact(dir: &Path, name: &str) -> PathBuf {
    let out = dir.join(format!("{name}.artifact.json"));
    let o = run(&["preprocess", fixture(name).to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

fn load(name: &str) -> Value {
    let p = root().join("crates/cli/schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Compiled shipped schema, with the shared definitions registered.
pub fn schema(name: &str) -> JSONSchema {
    JSONSchema::options()
        .with_document("https://localizer.invalid/schemas/common.schema.json".into(), load("common.schema.json"))
        .compile(&load(name))
        .expect("schema compiles")
}

pub fn assert_valid(schema: &JSONSchema, doc: &Value) {
    if let Err(errs) = schema.validate(doc) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
}
