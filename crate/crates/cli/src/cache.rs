//! Optional sweep cache keyed by a content hash of the spec and the
//! artifact version. Enabled by setting `EFM_CACHE_DIR`; stale or corrupt
//! cache files are ignored silently, unwritable paths only produce a
//! warning.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::sweep::{ResultRecord, SweepSpec};

pub const ENV_VAR: &str = "EFM_CACHE_DIR";

fn cache_file(spec: &SweepSpec) -> Option<PathBuf> {
    let dir = std::env::var_os(ENV_VAR)?;
    let payload = format!(
        "{}|{}",
        serde_json::to_string(spec).expect("spec serialization is infallible"),
        env!("CARGO_PKG_VERSION"),
    );
    let digest = Sha256::digest(payload.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    Some(PathBuf::from(dir).join(format!("sweep-{hex}.json")))
}

pub fn load(spec: &SweepSpec) -> Option<Vec<ResultRecord>> {
    let path = cache_file(spec)?;
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(spec: &SweepSpec, records: &[ResultRecord]) {
    let Some(path) = cache_file(spec) else { return };
    // Timing is excluded from the cache so cached replays stay deterministic.
    let stripped: Vec<ResultRecord> = records
        .iter()
        .map(|r| ResultRecord { micros: 0, ..r.clone() })
        .collect();
    let text = serde_json::to_string(&stripped).expect("record serialization is infallible");
    let write = path
        .parent()
        .map(fs::create_dir_all)
        .unwrap_or(Ok(()))
        .and_then(|()| fs::write(&path, text));
    if let Err(err) = write {
        eprintln!("warning: cache write to {} failed ({err}); proceeding uncached", path.display());
    }
}
