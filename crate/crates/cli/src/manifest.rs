//! Run manifests and output staging.
//!
//! Every subcommand records what it read, what it wrote (with content
//! hashes) and how long it took. Files created by a failed run are
//! removed so an output directory never holds partial results.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::formats::write_json;
use crate::Result;

#[derive(Debug, Serialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: serde_json::Value,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
    pub duration_ms: u64,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let digest = Sha256::digest(&bytes);
    let mut hex = String::with_capacity(64);
    for b in digest {
        hex.push_str(&format!("{b:02x}"));
    }
    Ok(hex)
}

fn hash_files(paths: &[PathBuf]) -> Result<Vec<FileHash>> {
    paths
        .iter()
        .map(|p| {
            Ok(FileHash {
                path: p.display().to_string(),
                sha256: sha256_file(p)?,
            })
        })
        .collect()
}

/// Registers output files as they are created so they can be hashed on
/// success and deleted on failure.
pub struct OutputTracker {
    dir: PathBuf,
    created: Vec<PathBuf>,
}

impl OutputTracker {
    pub fn new(dir: &Path) -> Result<OutputTracker> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(OutputTracker {
            dir: dir.to_path_buf(),
            created: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Path for a new output file, registered for hashing/cleanup.
    pub fn file(&mut self, name: &str) -> PathBuf {
        let path = self.dir.join(name);
        self.created.push(path.clone());
        path
    }

    fn remove_created(&self) {
        for path in &self.created {
            let _ = fs::remove_file(path);
        }
    }
}

/// Runs a subcommand body with manifest bookkeeping: on success writes
/// `<subcommand>_manifest.json`, on failure removes everything the body
/// created.
pub fn run_command<T>(
    subcommand: &str,
    params: serde_json::Value,
    inputs: &[PathBuf],
    out_dir: &Path,
    body: impl FnOnce(&mut OutputTracker) -> Result<T>,
) -> Result<T> {
    let started = Instant::now();
    let mut tracker = OutputTracker::new(out_dir)?;
    let value = match body(&mut tracker) {
        Ok(v) => v,
        Err(e) => {
            tracker.remove_created();
            return Err(e);
        }
    };
    let manifest = RunManifest {
        subcommand: subcommand.to_string(),
        params,
        inputs: hash_files(inputs)?,
        outputs: hash_files(&tracker.created)?,
        duration_ms: started.elapsed().as_millis() as u64,
    };
    write_json(
        &out_dir.join(format!("{subcommand}_manifest.json")),
        &manifest,
    )?;
    Ok(value)
}
