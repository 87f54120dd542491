//! On-disk cache of enumerated group tables, keyed by spec.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use fixfree_core::group::{build_group, GroupSpec, GroupTable};

/// Environment variable naming the cache directory. Unset disables caching.
pub const CACHE_ENV: &str = "FIXFREE_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    /// Built and stored; also used when a stale or corrupt file was replaced.
    Stored,
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn cache_file(dir: &Path, spec: &GroupSpec) -> PathBuf {
    dir.join(format!("{}_{}_{}.grp", spec.family.name(), spec.n, spec.q))
}

/// Load from `dir` when possible; otherwise build and write the table back.
/// A file that fails to decode is rebuilt rather than trusted.
pub fn load_or_build_in(dir: Option<&Path>, spec: &GroupSpec, cap: u64) -> anyhow::Result<(GroupTable, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((build_group(spec, cap)?, CacheStatus::Disabled));
    };
    let path = cache_file(dir, spec);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(t) = GroupTable::decode(&bytes, spec) {
            return Ok((t, CacheStatus::Hit));
        }
    }
    let table = build_group(spec, cap)?;
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    // write then rename so a concurrent reader never sees a partial file
    let tmp = path.with_extension(format!("grp.{}.tmp", std::process::id()));
    fs::write(&tmp, table.encode()?).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok((table, CacheStatus::Stored))
}

pub fn load_or_build(spec: &GroupSpec, cap: u64) -> anyhow::Result<(GroupTable, CacheStatus)> {
    load_or_build_in(cache_dir().as_deref(), spec, cap)
}
