mod common;

use std::path::Path;

use common::*;
use noulrich::report::strip_timing;
use serde_json::Value;

fn copy_corpus(to: &Path) {
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

fn corpus_report(dir: &Path, jobs: &str) -> (i32, Value) {
    report(&["corpus", dir.to_str().unwrap(), "--jobs", jobs])
}

#[test]
fn bundled_corpus_passes() {
    let (code, r) = report(&["corpus"]);
    assert_schema_valid(&r);
    let res = &r["results"];
    assert_eq!(res["failed"], serde_json::json!([]), "{:#}", res["entries"]);
    assert_eq!(code, 0);
    assert_eq!(res["total"], res["passed_count"]);
    assert!(res["total"].as_u64().unwrap() >= 25);
}

#[test]
fn corpus_runs_are_deterministic_up_to_timing() {
    let dir = corpus_dir();
    let (_, mut a) = corpus_report(&dir, "1");
    let (_, mut b) = corpus_report(&dir, "8");
    strip_timing(&mut a);
    strip_timing(&mut b);
    // The job count is part of the echoed command line and hence the digest.
    for v in [&mut a, &mut b] {
        let obj = v.as_object_mut().unwrap();
        obj.remove("command");
        obj.remove("input_digest");
    }
    assert_eq!(a, b);
    let (_, mut c) = corpus_report(&dir, "1");
    let (_, mut d) = corpus_report(&dir, "1");
    strip_timing(&mut c);
    strip_timing(&mut d);
    assert_eq!(serde_json::to_string(&c).unwrap(), serde_json::to_string(&d).unwrap());
}

#[test]
fn perturbed_entry_fails_alone() {
    let tmp = tempfile::tempdir().unwrap();
    copy_corpus(tmp.path());
    let manifest = tmp.path().join("corpus.toml");
    let text = std::fs::read_to_string(&manifest).unwrap();
    let perturbed = text.replacen("values = { multiplicity = 12 }", "values = { multiplicity = 13 }", 1);
    assert_ne!(perturbed, text);
    std::fs::write(&manifest, perturbed).unwrap();
    let (code, r) = corpus_report(tmp.path(), "4");
    assert_eq!(code, 1);
    assert_eq!(r["results"]["failed"], serde_json::json!(["family-2-multiplicity"]));
    let entry = r["results"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["id"] == "family-2-multiplicity")
        .unwrap();
    assert_eq!(entry["mismatches"][0], "multiplicity = 12 (expected 13)");
    let text_out = stdout(&run(&["corpus", tmp.path().to_str().unwrap()]));
    assert!(text_out.lines().any(|l| l.starts_with("FAIL") && l.contains("family-2-multiplicity")), "{text_out}");
}

#[test]
fn unexpected_entry_error_names_the_entry() {
    let tmp = tempfile::tempdir().unwrap();
    copy_corpus(tmp.path());
    std::fs::write(tmp.path().join("family1.ring"), "vars: x\nrelation: x^2 - x\n").unwrap();
    let o = run(&["corpus", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("family-1-multiplicity"), "{}", stderr(&o));
}

#[test]
fn empty_or_missing_corpus_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["corpus", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("corpus.toml"));
    std::fs::write(tmp.path().join("corpus.toml"), "# nothing\n").unwrap();
    assert_eq!(code(&run(&["corpus", tmp.path().to_str().unwrap()])), 2);
    std::fs::write(tmp.path().join("corpus.toml"), "[[check]]\nid = 1\n").unwrap();
    let o = run(&["corpus", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}
