//! Append-only JSONL certificate cache. Every case evaluated by a sweep or
//! driver is recorded with enough context (descriptor, seed, prime) to replay
//! it and reproduce the verdict bit-for-bit.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::induction::CaseReport;
use crate::statements::Verdict;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateRecord {
    pub descriptor: String,
    pub verdict: Verdict,
    pub achieved_rank: u64,
    pub target: u64,
    pub seed: u64,
    pub prime: u32,
    pub timestamp: u64,
    pub tool_version: String,
}

impl CertificateRecord {
    pub fn from_case(case: &CaseReport) -> Self {
        Self {
            descriptor: case.descriptor.clone(),
            verdict: case.verdict,
            achieved_rank: case.achieved_rank,
            target: case.target,
            seed: case.seed,
            prime: case.prime,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// JSONL cache on disk, keyed implicitly by (descriptor, prime, seed).
pub struct CertCache {
    path: PathBuf,
}

impl CertCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, record: &CertificateRecord) -> Result<()> {
        let line = serde_json::to_string(record)
            .map_err(|e| Error::Parse(format!("serialize record: {e}")))?;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{line}")?;
        Ok(())
    }

    pub fn append_cases(&self, cases: &[CaseReport]) -> Result<()> {
        for case in cases {
            self.append(&CertificateRecord::from_case(case))?;
        }
        Ok(())
    }

    pub fn load(&self) -> Result<Vec<CertificateRecord>> {
        let file = std::fs::File::open(&self.path)?;
        let mut records = Vec::new();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            records.push(
                serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("record on line {}: {e}", lineno + 1)))?,
            );
        }
        Ok(records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_and_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CertCache::new(dir.path().join("certs.jsonl"));
        let rec = CertificateRecord {
            descriptor: "A:i=0:n=3:d=3:s=const:2:t=const:0:u=const:0:v=const:0".into(),
            verdict: Verdict::Verified,
            achieved_rank: 20,
            target: 20,
            seed: 99,
            prime: 32003,
            timestamp: 12345,
            tool_version: "0.1.0".into(),
        };
        cache.append(&rec).unwrap();
        cache.append(&rec).unwrap();
        let loaded = cache.load().unwrap();
        assert_eq!(loaded.len(), 2);
        assert_eq!(loaded[0], rec);
    }
}
