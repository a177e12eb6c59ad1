//! Golden-file regression for the full Q5 run. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p superalg-cli --test golden`.

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Runs `all` and returns `(file name, contents)` for every artifact.
fn artifacts(name: &str) -> Vec<(String, String)> {
    let dir = scratch(name);
    let bin = env!("CARGO_BIN_EXE_superalg");
    let json = dir.join("all.json");
    let csv = dir.join("csv");
    for args in [vec!["all", "--out", json.to_str().unwrap()], vec!["all", "--format", "csv", "--out", csv.to_str().unwrap()]] {
        let status = Command::new(bin).args(&args).stderr(Stdio::null()).status().unwrap();
        // the numeric cross-validation fails, every other check passes
        assert_eq!(status.code(), Some(1), "{args:?}");
    }
    let mut out = vec![("all.json".to_string(), std::fs::read_to_string(&json).unwrap())];
    let mut tables: Vec<_> = std::fs::read_dir(&csv).unwrap().map(|e| e.unwrap().path()).collect();
    tables.sort();
    for t in tables {
        out.push((t.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&t).unwrap()));
    }
    out
}

#[test]
fn consecutive_runs_are_byte_identical() {
    assert_eq!(artifacts("first"), artifacts("second"));
}

#[test]
fn full_run_matches_golden_files() {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, text) in artifacts("golden") {
        let path = dir.join(&name);
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert!(want == text, "{name} differs from its golden file; rerun with UPDATE_GOLDEN=1 after reviewing");
    }
}
