//! On-disk cache of class lists under `GAPCERT_CACHE_DIR`.

use std::fs;
use std::path::PathBuf;

use gapcert_core::fuchsia::{ClassRow, CompletenessCertificate};
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "GAPCERT_CACHE_DIR";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CachedClasses {
    pub version: String,
    pub certificate: CompletenessCertificate,
    pub rows: Vec<ClassRow>,
}

fn path_for(length_bound: f64, max_word_length: u32) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("classes-L{length_bound}-b{max_word_length}.json")))
}

pub fn load(length_bound: f64, max_word_length: u32) -> Option<CachedClasses> {
    let text = fs::read_to_string(path_for(length_bound, max_word_length)?).ok()?;
    let c: CachedClasses = serde_json::from_str(&text).ok()?;
    (c.version == crate::output::TOOL_VERSION).then_some(c)
}

/// Best effort: a cache that cannot be written is skipped.
pub fn store(length_bound: f64, max_word_length: u32, entry: &CachedClasses) {
    let Some(path) = path_for(length_bound, max_word_length) else {
        return;
    };
    if let Some(dir) = path.parent() {
        let _ = fs::create_dir_all(dir);
    }
    let tmp = path.with_extension("tmp");
    if fs::write(
        &tmp,
        serde_json::to_vec(entry).expect("cache entry serializes"),
    )
    .is_ok()
    {
        let _ = fs::rename(&tmp, &path);
    }
}
