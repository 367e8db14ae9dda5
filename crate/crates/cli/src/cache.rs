//! On-disk cache of genus solutions.
//!
//! One file per `(model, genus, engine)`. The payload is stored as the exact
//! JSON text that was hashed, so a hit returns the same bytes a fresh solve
//! would serialize to. Writes go to a temporary file first and are renamed
//! into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qkdv_core::loopeq::{integrate_genus, solve_genus, GenusSolution, Kernels, LoopModel};

/// Version of every JSON document the CLI writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "QKDV_CACHE_DIR";

/// Identifies the engine build; entries from other builds are ignored.
pub fn engine_key() -> String {
    let id = format!("qkdv-core@{}/schema-{SCHEMA_VERSION}", env!("CARGO_PKG_VERSION"));
    sha256_hex(id.as_bytes())[..16].to_string()
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    schema: u32,
    engine: String,
    model: LoopModel,
    genus: u32,
    checksum: String,
    payload: String,
}

/// The cache directory, or `None` when caching is disabled.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// `$XDG_CACHE_HOME/qkdv`, then `$HOME/.cache/qkdv`, then `.qkdv-cache`.
    pub fn default_dir() -> PathBuf {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
            return PathBuf::from(x).join("qkdv");
        }
        match std::env::var_os("HOME") {
            Some(h) => PathBuf::from(h).join(".cache").join("qkdv"),
            None => PathBuf::from(".qkdv-cache"),
        }
    }

    fn path(&self, model: LoopModel, genus: u32) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{model}-g{genus}-{}.json", engine_key())))
    }

    /// The cached solution, `None` on a miss. A damaged entry is an error.
    pub fn load(&self, model: LoopModel, genus: u32) -> Result<Option<GenusSolution>> {
        let Some(path) = self.path(model, genus) else {
            return Ok(None);
        };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let entry: Entry =
            serde_json::from_str(&text).with_context(|| format!("cache entry {} is not valid JSON", path.display()))?;
        if entry.schema != SCHEMA_VERSION || entry.engine != engine_key() {
            return Ok(None);
        }
        let actual = sha256_hex(entry.payload.as_bytes());
        if actual != entry.checksum {
            bail!(
                "cache entry {} is corrupt: checksum mismatch (stored {}, computed {actual}); delete it to recompute",
                path.display(),
                entry.checksum
            );
        }
        if entry.model != model || entry.genus != genus {
            bail!("cache entry {} holds {} genus {}", path.display(), entry.model, entry.genus);
        }
        let value: serde_json::Value = serde_json::from_str(&entry.payload)?;
        Ok(Some(GenusSolution::from_json(&value)?))
    }

    pub fn store(&self, sol: &GenusSolution) -> Result<()> {
        let Some(path) = self.path(sol.model, sol.genus) else {
            return Ok(());
        };
        let payload = serde_json::to_string(&sol.to_json())?;
        let entry = Entry {
            schema: SCHEMA_VERSION,
            engine: engine_key(),
            model: sol.model,
            genus: sol.genus,
            checksum: sha256_hex(payload.as_bytes()),
            payload,
        };
        write_atomic(&path, serde_json::to_string_pretty(&entry)?.as_bytes())
    }

    /// Genera `1..=genus` of `model`, loading what is cached and solving
    /// (and storing) the rest.
    pub fn solutions(&self, model: LoopModel, genus: u32) -> Result<Vec<GenusSolution>> {
        let mut kernels: Option<Kernels> = None;
        let mut out: Vec<GenusSolution> = Vec::new();
        for g in 1..=genus {
            if let Some(sol) = self.load(model, g)? {
                out.push(sol);
                continue;
            }
            let k = kernels.get_or_insert_with(|| Kernels::new(model));
            let sol = integrate_genus(&solve_genus(k, &out, g)?)?;
            self.store(&sol)?;
            out.push(sol);
        }
        Ok(out)
    }
}

/// Writes `bytes` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("qkdv-cache-unit-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = scratch("rt");
        let cache = Cache::at(&dir);
        let fresh = cache.solutions(LoopModel::GfmV4, 2).unwrap();
        let again = cache.solutions(LoopModel::GfmV4, 2).unwrap();
        assert_eq!(fresh, again);

        let path = cache.path(LoopModel::GfmV4, 2).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("1/576", "1/575", 1)).unwrap();
        let e = cache.load(LoopModel::GfmV4, 2).unwrap_err().to_string();
        assert!(e.contains("checksum mismatch"), "{e}");
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn other_engines_are_misses() {
        let dir = scratch("engine");
        let cache = Cache::at(&dir);
        cache.solutions(LoopModel::Fvh, 1).unwrap();
        let path = cache.path(LoopModel::Fvh, 1).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace(&engine_key(), "0000000000000000")).unwrap();
        assert!(cache.load(LoopModel::Fvh, 1).unwrap().is_none());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn disabled_cache_never_hits() {
        let cache = Cache::disabled();
        assert_eq!(cache.solutions(LoopModel::GfmV4, 1).unwrap().len(), 1);
        assert!(cache.load(LoopModel::GfmV4, 1).unwrap().is_none());
    }
}
