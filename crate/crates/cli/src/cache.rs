//! On-disk cache of root tables, keyed by matrix hash and height cap.
//! Files are immutable once written; unreadable or stale entries are
//! regenerated.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use kmlab_core::{Gcm, RootTable};

use crate::output::write_atomic;
use crate::Failure;

pub const CACHE_VERSION: u32 = 1;

pub fn table_path(dir: &Path, gcm: &Gcm, height_cap: i64) -> PathBuf {
    dir.join(format!(
        "roots-v{CACHE_VERSION}-{}-H{height_cap}.jsonl",
        gcm.hash_hex()
    ))
}

/// Loads the table from `dir` when present and valid, otherwise generates
/// it and stores it there.
pub fn root_table(dir: Option<&Path>, gcm: &Gcm, height_cap: i64) -> Result<RootTable, Failure> {
    let Some(dir) = dir else {
        return RootTable::generate(gcm, height_cap).map_err(|e| Failure::usage(e.to_string()));
    };
    let path = table_path(dir, gcm, height_cap);
    if let Ok(file) = File::open(&path) {
        if let Ok(table) = RootTable::read_jsonl(gcm, height_cap, BufReader::new(file)) {
            return Ok(table);
        }
    }
    let table = RootTable::generate(gcm, height_cap).map_err(|e| Failure::usage(e.to_string()))?;
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::usage(format!("cannot create cache dir {}: {e}", dir.display())))?;
    let mut buf = Vec::new();
    table
        .write_jsonl(&mut buf)
        .map_err(|e| Failure::usage(e.to_string()))?;
    write_atomic(&path, &buf)?;
    Ok(table)
}
