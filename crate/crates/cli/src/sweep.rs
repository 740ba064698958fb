//! The resumable conjecture sweep. Each finished cell is written to
//! `<out>.cells/cell-A-B.json`; a rerun loads those files instead of recomputing.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use fihl_core::conjecture::report_from;
use fihl_core::koszul::homology_decomposition;
use fihl_core::linalg::RankPolicy;

use crate::commands::{pretty, Failure};

fn cell_dir(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".cells");
    out.with_file_name(name)
}

fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_os_string();
    tmp.push(".tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn load(path: &Path) -> Option<Value> {
    let text = fs::read_to_string(path).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    v.get("status")?.as_str()?;
    Some(v)
}

fn compute(a: usize, b: usize, policy: RankPolicy) -> Result<Value, Failure> {
    let start = Instant::now();
    let homology = homology_decomposition(a, b, policy)?;
    let report = report_from(&homology);
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["chain_dims"] = json!(homology.chain_dims);
    v["ranks"] = json!(homology.ranks);
    v["modes"] = json!(homology.modes);
    v["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    Ok(v)
}

fn cell(dir: &Path, a: usize, b: usize, policy: RankPolicy) -> Result<Value, Failure> {
    let path = dir.join(format!("cell-{a}-{b}.json"));
    if let Some(v) = load(&path) {
        return Ok(v);
    }
    let v = compute(a, b, policy)?;
    write_atomic(&path, &pretty(&v))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(v)
}

pub fn run(out: &Path, max_a: usize, max_b: usize, timing: bool, policy: RankPolicy) -> Result<(), Failure> {
    let dir = cell_dir(out);
    fs::create_dir_all(&dir)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;

    let grid: Vec<(usize, usize)> = (0..=max_a)
        .flat_map(|a| (0..=max_b).map(move |b| (a, b)))
        .collect();
    let mut cells = grid
        .par_iter()
        .map(|&(a, b)| cell(&dir, a, b, policy))
        .collect::<Result<Vec<_>, _>>()?;

    let mut counts = json!({"match": 0, "strict-inclusion": 0, "VIOLATION": 0});
    let mut violations = Vec::new();
    for (v, &(a, b)) in cells.iter_mut().zip(&grid) {
        let status = v["status"].as_str().unwrap_or("VIOLATION").to_string();
        counts[&status] = json!(counts[&status].as_u64().unwrap_or(0) + 1);
        if status == "VIOLATION" {
            violations.push(format!("({a},{b})"));
        }
        if !timing {
            if let Some(obj) = v.as_object_mut() {
                obj.remove("timing_ms");
            }
        }
    }
    let report = json!({
        "max_a": max_a,
        "max_b": max_b,
        "summary": counts,
        "cells": cells,
    });
    write_atomic(out, &pretty(&report))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
    eprintln!(
        "{} cells: {} match, {} strict-inclusion, {} VIOLATION",
        grid.len(),
        report["summary"]["match"],
        report["summary"]["strict-inclusion"],
        report["summary"]["VIOLATION"]
    );
    if !violations.is_empty() {
        return Err(Failure::Internal(format!(
            "lower bound violated in cells {}",
            violations.join(" ")
        )));
    }
    Ok(())
}
