//! Append-only record cache. Each line is one survey record in JSON. Lines
//! that do not parse are moved to `<cache>.quarantine` with a warning, never
//! dropped silently.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::survey::{RecordKey, SurveyRecord};

pub fn parse_cache_line(line: &str) -> Result<SurveyRecord, String> {
    let rec: SurveyRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    rec.check_consistent()?;
    Ok(rec)
}

#[derive(Debug, Serialize)]
struct Quarantined<'a> {
    line: usize,
    error: &'a str,
    text: &'a str,
}

pub struct Cache {
    path: PathBuf,
    file: File,
    keys: HashSet<RecordKey>,
    records: Vec<SurveyRecord>,
    quarantined: usize,
}

impl Cache {
    pub fn open(path: &Path) -> io::Result<Cache> {
        let existing = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e),
        };
        let mut keys = HashSet::new();
        let mut records = Vec::new();
        let mut good = String::new();
        let mut bad = Vec::new();
        for (i, line) in existing.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match parse_cache_line(line) {
                Ok(rec) => {
                    good.push_str(line);
                    good.push('\n');
                    keys.insert(rec.key());
                    records.push(rec);
                }
                Err(e) => {
                    log::warn!("{}:{}: quarantined corrupt cache line: {e}", path.display(), i + 1);
                    bad.push(serde_json::to_string(&Quarantined {
                        line: i + 1,
                        error: &e,
                        text: line,
                    })?);
                }
            }
        }
        if !bad.is_empty() {
            let mut q = OpenOptions::new()
                .create(true)
                .append(true)
                .open(quarantine_path(path))?;
            for b in &bad {
                writeln!(q, "{b}")?;
            }
            q.sync_all()?;
            // only after the quarantine copy is safe
            let tmp = with_suffix(path, ".tmp");
            fs::write(&tmp, &good)?;
            fs::rename(&tmp, path)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        // a torn final line must not swallow the next record
        if bad.is_empty() && !existing.is_empty() && !existing.ends_with('\n') {
            writeln!(file)?;
        }
        Ok(Cache {
            path: path.to_path_buf(),
            file,
            keys,
            records,
            quarantined: bad.len(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn contains(&self, key: &RecordKey) -> bool {
        self.keys.contains(key)
    }

    pub fn append(&mut self, rec: &SurveyRecord) -> io::Result<()> {
        let line = serde_json::to_string(rec)?;
        writeln!(self.file, "{line}")?;
        self.file.flush()?;
        self.keys.insert(rec.key());
        self.records.push(rec.clone());
        Ok(())
    }

    pub fn quarantined(&self) -> usize {
        self.quarantined
    }

    /// Stored records for `claim`, in file order.
    pub fn query<'a>(&'a self, claim: &'a str) -> impl Iterator<Item = &'a SurveyRecord> + 'a {
        self.records.iter().filter(move |r| r.claim == claim)
    }
}

pub fn quarantine_path(path: &Path) -> PathBuf {
    with_suffix(path, ".quarantine")
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}
