//! Report serialization and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use kmlab_core::nilpotency::{DegreeReport, SweepSummary};
use kmlab_core::{Gcm, RootVector};
use serde::Serialize;

use crate::Failure;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let io = |e: std::io::Error| Failure::usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord<'a> {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub gcm_hash: &'a str,
    pub word: &'a kmlab_core::Word,
    pub length: usize,
    pub invset_size: usize,
    pub degree: usize,
    pub max_chain: usize,
    pub witness: Vec<RootVector>,
}

impl<'a> SweepRecord<'a> {
    pub fn new(gcm_hash: &'a str, r: &'a DegreeReport) -> Self {
        SweepRecord {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            gcm_hash,
            word: &r.word,
            length: r.length,
            invset_size: r.invset_size,
            degree: r.degree,
            max_chain: r.max_chain,
            witness: r.witness.term_vectors(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryFile<'a> {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub gcm_hash: String,
    pub gcm: String,
    pub records: usize,
    #[serde(flatten)]
    pub summary: &'a SweepSummary,
}

impl<'a> SummaryFile<'a> {
    pub fn new(gcm: &Gcm, records: usize, summary: &'a SweepSummary) -> Self {
        SummaryFile {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            gcm_hash: gcm.hash_hex(),
            gcm: gcm.canonical_string(),
            records,
            summary,
        }
    }
}

/// `word;length;invset_size;degree;max_chain;witness`, arrays as JSON.
pub fn sweep_csv(reports: &[DegreeReport]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(b';')
        .from_writer(Vec::new());
    let fail = |e: csv::Error| Failure::usage(format!("csv: {e}"));
    w.write_record([
        "word",
        "length",
        "invset_size",
        "degree",
        "max_chain",
        "witness",
    ])
    .map_err(fail)?;
    for r in reports {
        let json = |v: &dyn erased::Json| v.to_json();
        w.write_record([
            json(&r.word),
            r.length.to_string(),
            r.invset_size.to_string(),
            r.degree.to_string(),
            r.max_chain.to_string(),
            json(&r.witness.term_vectors()),
        ])
        .map_err(fail)?;
    }
    w.into_inner()
        .map_err(|e| Failure::usage(format!("csv: {e}")))
}

pub fn sweep_json(gcm: &Gcm, reports: &[DegreeReport]) -> Vec<u8> {
    let hash = gcm.hash_hex();
    let records: Vec<SweepRecord> = reports.iter().map(|r| SweepRecord::new(&hash, r)).collect();
    let mut out = serde_json::to_vec_pretty(&records).expect("records serialize");
    out.push(b'\n');
    out
}

/// `<out>.summary.json` beside the record file.
pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".summary.json");
    out.with_file_name(name)
}

mod erased {
    pub trait Json {
        fn to_json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn to_json(&self) -> String {
            serde_json::to_string(self).expect("value serializes")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmlab_core::nilpotency::degree_of_word;
    use kmlab_core::{reference, Word};

    #[test]
    fn csv_layout() {
        let g = reference::g2();
        let r = degree_of_word(&g, &Word::parse("1,2").unwrap()).unwrap();
        let text = String::from_utf8(sweep_csv(&[r]).unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("word;length;invset_size;degree;max_chain;witness")
        );
        let row = lines.next().unwrap();
        assert_eq!(row, "[1,2];2;2;1;1;[[0,1]]");
    }

    #[test]
    fn summary_sits_beside_output() {
        assert_eq!(
            summary_path(Path::new("/tmp/x/s.csv")),
            PathBuf::from("/tmp/x/s.csv.summary.json")
        );
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
