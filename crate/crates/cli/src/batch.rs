use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use kpclass::classify::{FieldSpec, EXIT_INPUT_ERROR};
use kpclass::par;
use serde_json::{json, Value};

use crate::commands::{classify_report, envelope, pretty, read_graph, Output};
use crate::{Common, Format};

/// Writes `contents` to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().context("report path has no directory")?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

struct Outcome {
    name: String,
    level: Option<String>,
    code: i32,
    error: Option<String>,
}

fn classify_one(input: &Path, out_dir: &Path, field: &FieldSpec, seed: u64) -> Outcome {
    let name = input.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let result = (|| -> Result<(String, i32)> {
        let g = read_graph(input)?;
        let common = Common { seed, format: Format::Json };
        let rel = PathBuf::from(&name);
        let out = classify_report(&[rel], &[g], field, &common)?;
        write_atomic(&out_dir.join(&name), &out.stdout)?;
        let report: Value = serde_json::from_str(&out.stdout)?;
        Ok((report["level"].as_str().unwrap_or_default().to_string(), out.code))
    })();
    match result {
        Ok((level, code)) => Outcome { name, level: Some(level), code, error: None },
        Err(e) => Outcome { name, level: None, code: EXIT_INPUT_ERROR, error: Some(format!("{e:#}")) },
    }
}

/// Classifies every `*.json` file in `dir`, writing one report per input into
/// `out` and a summary to standard output. The exit status is the most severe
/// one seen.
pub fn classify_dir(dir: &Path, out: &Path, jobs: usize, field: &FieldSpec, seed: u64) -> Result<Output> {
    let mut inputs: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    inputs.sort();
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let outcomes = par::map_bounded(&inputs, jobs, |p| classify_one(p, out, field, seed));
    let code = outcomes.iter().map(|o| o.code).max().unwrap_or(0);
    let results: Vec<Value> = outcomes
        .iter()
        .map(|o| match &o.error {
            None => json!({ "input": o.name, "level": o.level, "exit": o.code }),
            Some(e) => json!({ "input": o.name, "error": e, "exit": o.code }),
        })
        .collect();
    for o in outcomes.iter().filter(|o| o.error.is_some()) {
        eprintln!("kpclass: {}: {}", o.name, o.error.as_deref().unwrap_or_default());
    }
    let body = json!({ "field": field, "results": results });
    Ok(Output { stdout: pretty(&envelope("classify", seed, json!(dir.display().to_string()), body)), code })
}
