#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

pub fn glw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glw")).args(args).env_remove("GLW_CAP").output().expect("glw runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

pub fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = glw(&all);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{:?}: {}\n{}", args, e, stderr(&o)));
    (v, code(&o))
}
