mod common;

use common::*;

fn validator() -> jsonschema::Validator {
    let path = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", "glw.schema.json"].join("/");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &serde_json::Value, args: &[&str]) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{:?}:\n{}", args, errors.join("\n"));
}

#[test]
fn every_verb_emits_valid_json() {
    let v = validator();
    let (w5, d) = (fixture("w5.gcat"), fixture("d.gcat"));
    let (window, tv4) = (fixture("window_filter.gfil"), fixture("torsion_v4.gfil"));
    let (p, u) = (fixture("p_v2.gmod"), fixture("uniserial.gmod"));
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["homs", &w5], 0),
        (vec!["homs", &d], 0),
        (vec!["ideals", &w5, "--object", "v2"], 0),
        (vec!["check-filter", &w5, &window], 1),
        (vec!["check-filter", &w5, &window, "--reading", "upclose"], 1),
        (vec!["check-filter", &w5, &window, "--reading", "upclose+meet"], 0),
        (vec!["filters", &d], 0),
        (vec!["filters", &w5], 0),
        (vec!["torsion", &w5, &tv4, &u], 0),
        (vec!["torsion", &w5, &window, &p, "--reading", "upclose+meet"], 0),
        (vec!["localize", &w5, &tv4, &u], 0),
        (vec!["localize", &w5, &window, &p, "--reading", "upclose+meet"], 0),
        (vec!["closed", &w5, &tv4, &u], 0),
        (vec!["closed", &w5, &window, &p, "--reading", "upclose+meet"], 1),
        (vec!["verify", &d, "--samples", "5", "--timings"], 0),
        (vec!["verify", &w5, &tv4, "--samples", "10"], 1),
        (vec!["verify", &w5, &window, "--samples", "3", "--reading", "upclose"], 0),
        (vec!["example"], 0),
    ];
    for (args, want) in &cases {
        let (doc, got) = json(args);
        assert_eq!(got, *want, "{:?}", args);
        assert_valid(&v, &doc, args);
        assert_eq!(doc["command"], args[0], "{:?}", args);
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator();
    let (mut doc, _) = json(&["check-filter", &fixture("w5.gcat"), &fixture("window_filter.gfil")]);
    assert!(v.is_valid(&doc));
    // A failing axiom must carry its witness.
    doc["axioms"][0].as_object_mut().unwrap().remove("witness");
    assert!(!v.is_valid(&doc));
    let unknown = serde_json::json!({"command": "nope"});
    assert!(!v.is_valid(&unknown));
}
