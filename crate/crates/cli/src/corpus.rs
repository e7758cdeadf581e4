//! The reproduction corpus: a `corpus.toml` manifest of checks, each a CLI
//! invocation with its expected exit code and expected result values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const MANIFEST: &str = "corpus.toml";

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub check: Vec<Check>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub id: String,
    pub command: String,
    #[serde(default)]
    pub args: Vec<String>,
    /// Where the expected values come from: `worked-example`, `derived`,
    /// `sanity` or `experimental`.
    pub origin: String,
    pub expect: Expect,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub exit: i32,
    /// Dotted paths into the results tree and the value each must hold.
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
}

/// What running one command in-process produced.
pub struct Run {
    pub exit: i32,
    pub results: Option<Value>,
    pub error: Option<String>,
    pub inputs: Vec<Vec<u8>>,
}

pub struct Loaded {
    pub manifest_bytes: Vec<u8>,
    pub checks: Vec<Check>,
}

pub fn load(dir: &Path) -> Result<Loaded, CliError> {
    let path = dir.join(MANIFEST);
    let bytes = std::fs::read(&path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Format {
        path: path.display().to_string(),
        at: "file".into(),
        message: "file is not valid UTF-8".into(),
    })?;
    let manifest: Manifest = toml::from_str(&text).map_err(|e| CliError::Format {
        path: path.display().to_string(),
        at: e
            .span()
            .map(|s| {
                let before = &text[..s.start];
                let line = before.matches('\n').count() + 1;
                let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
                format!("line {line}, column {column}")
            })
            .unwrap_or_else(|| "file".into()),
        message: e.message().to_string(),
    })?;
    if manifest.check.is_empty() {
        return Err(CliError::Usage(format!("{} lists no checks", path.display())));
    }
    let mut ids = std::collections::BTreeSet::new();
    for c in &manifest.check {
        if !ids.insert(c.id.as_str()) {
            return Err(CliError::Corpus {
                id: c.id.clone(),
                message: "duplicate id".into(),
            });
        }
        if c.command == "corpus" {
            return Err(CliError::Corpus {
                id: c.id.clone(),
                message: "a corpus entry cannot run the corpus".into(),
            });
        }
    }
    Ok(Loaded {
        manifest_bytes: bytes,
        checks: manifest.check,
    })
}

/// Arguments naming a file inside the corpus directory are resolved against it.
pub fn resolve_args(dir: &Path, check: &Check) -> Vec<String> {
    let mut argv = vec![check.command.clone()];
    for a in &check.args {
        let candidate: PathBuf = dir.join(a);
        if !a.starts_with('-') && candidate.is_file() {
            argv.push(candidate.display().to_string());
        } else {
            argv.push(a.clone());
        }
    }
    argv
}

fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| match cur {
        Value::Object(m) => m.get(key),
        Value::Array(items) => key.parse::<usize>().ok().and_then(|i| items.get(i)),
        _ => None,
    })
}

pub struct EntryResult {
    pub json: Value,
    pub passed: bool,
    /// Set when the entry hit an error it did not expect.
    pub error: Option<String>,
}

pub fn evaluate(check: &Check, argv: &[String], run: &Run, elapsed_ms: u64) -> EntryResult {
    let mut mismatches = Vec::new();
    if run.exit != check.expect.exit {
        mismatches.push(format!("exit {} (expected {})", run.exit, check.expect.exit));
    }
    for (path, want) in &check.expect.values {
        let got = run.results.as_ref().and_then(|r| lookup(r, path));
        if got != Some(want) {
            let shown = got.map_or("missing".to_string(), |g| g.to_string());
            mismatches.push(format!("{path} = {shown} (expected {want})"));
        }
    }
    let passed = mismatches.is_empty();
    let unexpected_error = if run.exit == 2 && check.expect.exit != 2 {
        run.error.clone()
    } else {
        None
    };
    EntryResult {
        json: json!({
            "id": check.id,
            "origin": check.origin,
            "command": argv,
            "expected_exit": check.expect.exit,
            "exit": run.exit,
            "passed": passed,
            "mismatches": mismatches,
            "error": run.error,
            "results": run.results,
            "timing_ms": elapsed_ms,
        }),
        passed,
        error: unexpected_error,
    }
}

/// Run every entry with at most `jobs` worker threads; results keep manifest order.
pub fn run_all(
    dir: &Path,
    checks: &[Check],
    jobs: usize,
    exec: &(dyn Fn(&[String]) -> Run + Sync),
) -> (Vec<EntryResult>, Vec<Vec<u8>>) {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<(EntryResult, Vec<Vec<u8>>)>>> =
        Mutex::new((0..checks.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, checks.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(check) = checks.get(i) else { break };
                let argv = resolve_args(dir, check);
                let start = Instant::now();
                let run = exec(&argv);
                let ms = start.elapsed().as_millis() as u64;
                let shown: Vec<String> = std::iter::once(check.command.clone()).chain(check.args.iter().cloned()).collect();
                let res = evaluate(check, &shown, &run, ms);
                slots.lock().unwrap()[i] = Some((res, run.inputs));
            });
        }
    });
    let mut results = Vec::new();
    let mut inputs = Vec::new();
    for slot in slots.into_inner().unwrap() {
        let (r, i) = slot.expect("every entry ran");
        results.push(r);
        inputs.extend(i);
    }
    (results, inputs)
}

/// Text table of a corpus results tree: one row per entry, then totals.
pub fn table(results: &Value) -> String {
    let entries = results["entries"].as_array().cloned().unwrap_or_default();
    let width = entries
        .iter()
        .filter_map(|e| e["id"].as_str())
        .map(str::len)
        .max()
        .unwrap_or(2);
    let mut out = format!("{:<6} {:<width$} {:<15} {:>4} {:>4}  detail\n", "status", "id", "origin", "exit", "want");
    for e in &entries {
        let passed = e["passed"].as_bool().unwrap_or(false);
        let detail: Vec<String> = e["mismatches"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(|m| m.as_str().map(str::to_string))
            .chain(e["error"].as_str().map(|s| format!("error: {s}")))
            .collect();
        out.push_str(&format!(
            "{:<6} {:<width$} {:<15} {:>4} {:>4}  {}\n",
            if passed { "PASS" } else { "FAIL" },
            e["id"].as_str().unwrap_or(""),
            e["origin"].as_str().unwrap_or(""),
            e["exit"].to_string(),
            e["expected_exit"].to_string(),
            detail.join("; ")
        ));
    }
    out.push_str(&format!(
        "total = {}\npassed_count = {}\nfailed = {}\nerrors = {}\n",
        results["total"], results["passed_count"], results["failed"], results["errors"]
    ));
    out
}
