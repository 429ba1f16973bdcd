//! Full-size acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use zetalab_cli::checks::{run_check, Scale, CHECK_NAMES};

/// Writes straight to stderr so the lines survive libtest output capture.
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

/// Runtime ceilings in seconds for criteria 1–13.
const LIMITS: [u64; 13] = [1, 30, 30, 5, 10, 60, 120, 600, 300, 120, 300, 60, 30];

fn report_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.file_name().unwrap().to_string_lossy().starts_with("manifest-"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

fn certify_quick(dir: &Path) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(["certify", "--quick", "--out"])
        .arg(dir)
        .output()
        .unwrap()
        .status
        .code()
        .unwrap_or(-1)
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for id in 1..=13u8 {
        let start = Instant::now();
        let outcome = run_check(id, Scale::Full);
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(LIMITS[id as usize - 1]);
        let (passed, summary) = match outcome {
            Ok(o) => (o.passed && elapsed <= limit, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        let status = if passed { "PASS" } else { "FAIL" };
        report(format!(
            "[{status}] {id:02} {}: {summary} ({:.2} s, limit {} s)",
            CHECK_NAMES[id as usize - 1],
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
        if !passed {
            failures.push(id);
        }
    }

    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let (ca, cb) = (certify_quick(a.path()), certify_quick(b.path()));
    let (fa, fb) = (report_files(a.path()), report_files(b.path()));
    let identical = !fa.is_empty() && fa == fb;
    let passed = ca == 0 && cb == 0 && identical;
    report(format!(
        "[{}] 14 {}: two `certify --quick` runs exit {ca}/{cb}, {} report files {} ({:.2} s)",
        if passed { "PASS" } else { "FAIL" },
        CHECK_NAMES[13],
        fa.len(),
        if identical { "byte-identical" } else { "differ" },
        start.elapsed().as_secs_f64()
    ));
    if !passed {
        failures.push(14);
    }

    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
