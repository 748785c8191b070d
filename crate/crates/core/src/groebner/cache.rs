//! On-disk storage for computed bases.
//!
//! ```text
//! ring: vars c30:param, c21:param; domain QQ
//! order: grevlex
//! generators-sha256: 3f1c…
//! meta source: x1^3
//! basis:
//! c21^2 - 3*c30*c12
//! ```
//!
//! Files are replaced atomically (temporary file in the same directory, then rename).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ring::{parse_poly, PolyRing, Polynomial, TermOrder};

const EXTENSION: &str = "gb";

#[derive(Clone, Debug, PartialEq)]
pub struct CacheEntry {
    pub ring: Arc<PolyRing>,
    pub order: TermOrder,
    pub generators_sha256: String,
    pub metadata: BTreeMap<String, String>,
    pub basis: Vec<Polynomial>,
}

/// Hash of a generator list in canonical text, tied to its ring declaration.
pub fn generators_hash(ring: &PolyRing, generators: &[Polynomial]) -> String {
    let mut h = Sha256::new();
    h.update(ring.to_string().as_bytes());
    for g in generators {
        h.update(b"\n");
        h.update(g.to_string().as_bytes());
    }
    hex::encode(h.finalize())
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl CacheEntry {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ring: {}\n", self.ring));
        out.push_str(&format!("order: {}\n", self.order.name()));
        out.push_str(&format!("generators-sha256: {}\n", self.generators_sha256));
        for (k, v) in &self.metadata {
            out.push_str(&format!("meta {}: {}\n", k, v.replace('\n', " ")));
        }
        out.push_str("basis:\n");
        for p in &self.basis {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<CacheEntry> {
        let mut lines = text.lines();
        let mut field = |name: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| Error::Format(format!("missing `{name}` line")))?;
            line.strip_prefix(name)
                .and_then(|r| r.strip_prefix(':'))
                .map(|r| r.trim().to_string())
                .ok_or_else(|| Error::Format(format!("expected `{name}:`, found `{line}`")))
        };
        let ring = PolyRing::parse_declaration(&field("ring")?)?;
        let order_text = field("order")?;
        let order = TermOrder::parse(&order_text).ok_or_else(|| Error::Format(format!("unknown order `{order_text}`")))?;
        if let TermOrder::Block(k) = order {
            if k > ring.arity() {
                return Err(Error::Format(format!("block size {k} exceeds ring arity")));
            }
        }
        let generators_sha256 = field("generators-sha256")?;
        let mut metadata = BTreeMap::new();
        let mut saw_basis = false;
        for line in lines.by_ref() {
            if line == "basis:" {
                saw_basis = true;
                break;
            }
            let rest = line
                .strip_prefix("meta ")
                .ok_or_else(|| Error::Format(format!("unexpected header line `{line}`")))?;
            let (k, v) = rest
                .split_once(':')
                .ok_or_else(|| Error::Format(format!("metadata line `{line}` lacks `:`")))?;
            metadata.insert(k.trim().to_string(), v.trim().to_string());
        }
        if !saw_basis {
            return Err(Error::Format("missing `basis:` line".into()));
        }
        let basis = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| parse_poly(l, &ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(CacheEntry { ring, order, generators_sha256, metadata, basis })
    }

    pub fn read(path: &Path) -> Result<CacheEntry> {
        CacheEntry::parse(&fs::read_to_string(path)?)
    }

    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.to_text().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
        Ok(())
    }
}

/// A directory of cache entries named `<key>.gb`.
#[derive(Clone, Debug)]
pub struct CacheDir {
    root: PathBuf,
}

impl CacheDir {
    pub fn open(root: impl Into<PathBuf>) -> Result<CacheDir> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(CacheDir { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.root.join(format!("{key}.{EXTENSION}"))
    }

    pub fn load(&self, key: &str) -> Result<Option<CacheEntry>> {
        let path = self.path_for(key);
        if !path.exists() {
            return Ok(None);
        }
        CacheEntry::read(&path).map(Some)
    }

    pub fn store(&self, key: &str, entry: &CacheEntry) -> Result<()> {
        entry.write_atomic(&self.path_for(key))
    }

    /// Keys present in the directory, sorted.
    pub fn keys(&self) -> Result<Vec<String>> {
        let mut keys = Vec::new();
        for item in fs::read_dir(&self.root)? {
            let path = item?.path();
            if path.extension().and_then(|e| e.to_str()) == Some(EXTENSION) {
                if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                    keys.push(stem.to_string());
                }
            }
        }
        keys.sort();
        Ok(keys)
    }

    /// Removes every entry; returns how many were deleted.
    pub fn purge(&self) -> Result<usize> {
        let keys = self.keys()?;
        for k in &keys {
            fs::remove_file(self.path_for(k))?;
        }
        Ok(keys.len())
    }
}
