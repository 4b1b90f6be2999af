//! Append-only JSON-lines cache of reports.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::report::{InvariantReport, ReportOptions};

pub const CACHE_ENV: &str = "COMMGRAPH_CACHE";
pub const DEFAULT_CACHE_FILE: &str = ".commgraph-cache.jsonl";

pub fn default_cache_path() -> PathBuf {
    std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE), PathBuf::from)
}

/// Key shared by isomorphic spellings (`Z6`, `Z2xZ3`) and by nothing else:
/// order, 2-rank, block shape, the prime-power factors, and the caps.
pub fn cache_key(group: &AbelianGroup, options: &ReportOptions) -> String {
    let n = group.order();
    let c = 1u64 << group.two_rank();
    let primary: Vec<String> = group
        .primary_decomposition()
        .iter()
        .map(u64::to_string)
        .collect();
    let caps = options.caps;
    format!(
        "n={n};r={};blocks={}x{c};primary={};caps={},{},{},{},{}",
        group.two_rank(),
        n / c,
        primary.join("."),
        caps.graph_vertices,
        caps.detour_vertices,
        caps.resolving_vertices,
        caps.chromatic_vertices,
        u8::from(caps.skip_oracles),
    )
}

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    report: InvariantReport,
}

pub struct Cache {
    path: PathBuf,
    entries: Mutex<HashMap<String, InvariantReport>>,
    writer: Mutex<Option<File>>,
}

impl Cache {
    /// Loads `path` if it exists. Unparseable lines are skipped and described
    /// in the returned warnings.
    pub fn open(path: impl AsRef<Path>) -> Result<(Self, Vec<String>)> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        let mut warnings = Vec::new();
        match File::open(&path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|e| io_error(&path, e))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<Line>(&line) {
                        Ok(l) => {
                            entries.insert(l.key, l.report);
                        }
                        Err(e) => warnings.push(format!(
                            "{}:{}: skipping corrupt cache line ({e})",
                            path.display(),
                            i + 1
                        )),
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io_error(&path, e)),
        }
        Ok((
            Cache {
                path,
                entries: Mutex::new(entries),
                writer: Mutex::new(None),
            },
            warnings,
        ))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<InvariantReport> {
        self.entries.lock().unwrap().get(key).cloned()
    }

    pub fn put(&self, key: &str, report: &InvariantReport) -> Result<()> {
        let line = serde_json::to_string(&Line {
            key: key.to_string(),
            report: report.clone(),
        })
        .expect("reports serialize");
        let mut writer = self.writer.lock().unwrap();
        if writer.is_none() {
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .map_err(|e| io_error(&self.path, e))?;
            *writer = Some(file);
        }
        writeln!(writer.as_mut().unwrap(), "{line}").map_err(|e| io_error(&self.path, e))?;
        self.entries
            .lock()
            .unwrap()
            .insert(key.to_string(), report.clone());
        Ok(())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}
