//! On-disk cache for the pentagram enumeration.
//!
//! `pentagrams.json` holds the canonical record array; `pentagrams.meta.json`
//! holds the totals and a SHA-256 of the record file's bytes. A load only
//! succeeds when the hash, the totals, and every record revalidate against
//! the context catalog; anything else triggers a silent re-enumeration.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::enumerator::{
    enumerate_pentagrams, ContextCatalog, ContextGraph, Pentagram, PentagramError,
};
use crate::records::{FamilyCounts, MetaRecord, PentagramRecord};

pub const PENTAGRAMS_FILE: &str = "pentagrams.json";
pub const META_FILE: &str = "pentagrams.meta.json";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Enumeration(#[from] PentagramError),
}

/// How the pentagram list was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    /// The cache files were present and consistent.
    Loaded,
    /// No usable cache file existed; the enumeration ran and was written.
    RebuiltMissing,
    /// A cache file existed but failed validation for the given reason.
    RebuiltInvalid(String),
}

pub fn pentagrams_path(cache_dir: &Path) -> PathBuf {
    cache_dir.join(PENTAGRAMS_FILE)
}

pub fn meta_path(cache_dir: &Path) -> PathBuf {
    cache_dir.join(META_FILE)
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        write!(hex, "{byte:02x}").expect("writing to a String cannot fail");
    }
    hex
}

enum LoadFailure {
    Missing,
    Invalid(String),
}

fn try_load(cache_dir: &Path, catalog: &ContextCatalog) -> Result<Vec<Pentagram>, LoadFailure> {
    let invalid = |reason: String| LoadFailure::Invalid(reason);
    let read = |path: &Path| -> Result<Vec<u8>, LoadFailure> {
        match fs::read(path) {
            Ok(bytes) => Ok(bytes),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Err(LoadFailure::Missing),
            Err(e) => Err(invalid(format!("reading {}: {e}", path.display()))),
        }
    };
    let body = read(&pentagrams_path(cache_dir))?;
    let meta_bytes = read(&meta_path(cache_dir))?;
    let meta: MetaRecord = serde_json::from_slice(&meta_bytes)
        .map_err(|e| invalid(format!("metadata does not parse: {e}")))?;
    let actual_hash = sha256_hex(&body);
    if meta.sha256 != actual_hash {
        return Err(invalid(format!(
            "content hash mismatch: metadata records {}, file hashes to {actual_hash}",
            meta.sha256
        )));
    }
    let records: Vec<PentagramRecord> = serde_json::from_slice(&body)
        .map_err(|e| invalid(format!("record file does not parse: {e}")))?;
    if records.len() as u32 != meta.total {
        return Err(invalid(format!(
            "metadata records {} pentagrams, file holds {}",
            meta.total,
            records.len()
        )));
    }
    let mut pentagrams = Vec::with_capacity(records.len());
    for (n, record) in records.iter().enumerate() {
        let pentagram = record
            .to_pentagram(catalog)
            .map_err(|e| invalid(format!("record {n}: {e}")))?;
        pentagrams.push(pentagram);
    }
    let families = FamilyCounts::tally(&pentagrams);
    if families != meta.families {
        return Err(invalid(format!(
            "family totals {families:?} disagree with metadata {:?}",
            meta.families
        )));
    }
    Ok(pentagrams)
}

/// Serializes the pentagram list and its metadata sidecar. The record file
/// bytes are deterministic, so equal enumerations produce equal files.
pub fn write(
    cache_dir: &Path,
    catalog: &ContextCatalog,
    pentagrams: &[Pentagram],
) -> Result<(), CacheError> {
    fs::create_dir_all(cache_dir)?;
    let records: Vec<PentagramRecord> = pentagrams
        .iter()
        .map(|p| PentagramRecord::from_pentagram(p, catalog))
        .collect();
    let mut body = serde_json::to_vec(&records)?;
    body.push(b'\n');
    let meta = MetaRecord {
        total: pentagrams.len() as u32,
        families: FamilyCounts::tally(pentagrams),
        sha256: sha256_hex(&body),
    };
    let mut meta_bytes = serde_json::to_vec_pretty(&meta)?;
    meta_bytes.push(b'\n');
    fs::write(pentagrams_path(cache_dir), body)?;
    fs::write(meta_path(cache_dir), meta_bytes)?;
    Ok(())
}

/// Loads the cached enumeration if it validates, otherwise enumerates from
/// scratch and rewrites the cache.
pub fn load_or_build(
    cache_dir: &Path,
    catalog: &ContextCatalog,
    graph: &ContextGraph,
) -> Result<(Vec<Pentagram>, CacheOutcome), CacheError> {
    let outcome = match try_load(cache_dir, catalog) {
        Ok(pentagrams) => return Ok((pentagrams, CacheOutcome::Loaded)),
        Err(LoadFailure::Missing) => CacheOutcome::RebuiltMissing,
        Err(LoadFailure::Invalid(reason)) => CacheOutcome::RebuiltInvalid(reason),
    };
    let pentagrams = enumerate_pentagrams(graph)?;
    write(cache_dir, catalog, &pentagrams)?;
    Ok((pentagrams, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn fixtures() -> &'static (ContextCatalog, ContextGraph, Vec<Pentagram>) {
        static FIXTURES: OnceLock<(ContextCatalog, ContextGraph, Vec<Pentagram>)> =
            OnceLock::new();
        FIXTURES.get_or_init(|| {
            let catalog = ContextCatalog::enumerate();
            let graph = ContextGraph::build(&catalog);
            let pentagrams = enumerate_pentagrams(&graph).unwrap();
            (catalog, graph, pentagrams)
        })
    }

    #[test]
    fn roundtrip_and_rebuild_paths() {
        let (catalog, graph, pentagrams) = fixtures();
        let dir = tempfile::tempdir().unwrap();

        let (built, outcome) = load_or_build(dir.path(), catalog, graph).unwrap();
        assert_eq!(outcome, CacheOutcome::RebuiltMissing);
        assert_eq!(&built, pentagrams);

        let (loaded, outcome) = load_or_build(dir.path(), catalog, graph).unwrap();
        assert_eq!(outcome, CacheOutcome::Loaded);
        assert_eq!(&loaded, pentagrams);
    }

    #[test]
    fn tampered_body_triggers_rebuild() {
        let (catalog, graph, pentagrams) = fixtures();
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), catalog, pentagrams).unwrap();

        let path = pentagrams_path(dir.path());
        let mut body = fs::read_to_string(&path).unwrap();
        body.truncate(body.len() - 2);
        fs::write(&path, body).unwrap();

        let (rebuilt, outcome) = load_or_build(dir.path(), catalog, graph).unwrap();
        assert!(matches!(outcome, CacheOutcome::RebuiltInvalid(ref r) if r.contains("hash")));
        assert_eq!(&rebuilt, pentagrams);
        let (_, outcome) = load_or_build(dir.path(), catalog, graph).unwrap();
        assert_eq!(outcome, CacheOutcome::Loaded);
    }

    #[test]
    fn missing_meta_counts_as_missing_cache() {
        let (catalog, graph, pentagrams) = fixtures();
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), catalog, pentagrams).unwrap();
        fs::remove_file(meta_path(dir.path())).unwrap();
        let (_, outcome) = load_or_build(dir.path(), catalog, graph).unwrap();
        assert_eq!(outcome, CacheOutcome::RebuiltMissing);
    }

    #[test]
    fn wrong_family_totals_are_rejected() {
        let (catalog, graph, pentagrams) = fixtures();
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), catalog, pentagrams).unwrap();

        let path = meta_path(dir.path());
        let mut meta: MetaRecord =
            serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        meta.families.neg5 += 1;
        meta.total += 1;
        fs::write(&path, serde_json::to_vec_pretty(&meta).unwrap()).unwrap();

        let (_, outcome) = load_or_build(dir.path(), catalog, graph).unwrap();
        assert!(matches!(outcome, CacheOutcome::RebuiltInvalid(ref r) if r.contains("metadata")));
    }
}
