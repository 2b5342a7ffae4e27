//! On-disk cache of reduced Gröbner bases keyed by a hash of the input.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{buchberger, GroebnerBasis, ORDER};
use crate::algebra::{Polynomial, VariableTable};
use crate::error::Result;

pub const CACHE_ENV: &str = "KIRWAN_CACHE_DIR";

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[derive(Serialize, Deserialize)]
struct Payload {
    order: String,
    variables: Vec<(String, u32)>,
    generators: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    input_hash: String,
    order: String,
    variables: Vec<(String, u32)>,
    basis: Vec<String>,
}

fn variables(table: &VariableTable) -> Vec<(String, u32)> {
    table.names().iter().cloned().zip(table.weights().iter().copied()).collect()
}

/// Hex SHA-256 of the variable table, order and generators in canonical text.
pub fn cache_key(table: &VariableTable, gens: &[Polynomial]) -> String {
    let payload = Payload {
        order: ORDER.to_string(),
        variables: variables(table),
        generators: gens.iter().map(|g| g.to_string()).collect(),
    };
    let bytes = serde_json::to_vec(&payload).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

/// Gröbner basis computation backed by an optional cache directory.
#[derive(Clone, Debug, Default)]
pub struct GroebnerCache {
    dir: Option<PathBuf>,
}

impl GroebnerCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        GroebnerCache { dir }
    }

    pub fn from_env() -> Self {
        GroebnerCache::new(cache_dir_from_env())
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn load(&self, path: &Path, key: &str, table: &Arc<VariableTable>) -> Option<GroebnerBasis> {
        let text = fs::read_to_string(path).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.input_hash != key || entry.order != ORDER || entry.variables != variables(table) {
            return None;
        }
        let polys = entry
            .basis
            .iter()
            .map(|s| Polynomial::parse(table, s))
            .collect::<Result<Vec<_>>>()
            .ok()?;
        Some(GroebnerBasis::from_reduced(table, polys))
    }

    fn store(&self, dir: &Path, path: &Path, key: &str, gb: &GroebnerBasis) -> Result<()> {
        fs::create_dir_all(dir)?;
        let entry = Entry {
            input_hash: key.to_string(),
            order: ORDER.to_string(),
            variables: variables(gb.table()),
            basis: gb.polys().iter().map(|p| p.to_string()).collect(),
        };
        let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&entry)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// The reduced basis of `gens`, read from the cache when present and
    /// written to it otherwise.
    pub fn basis(&self, table: &Arc<VariableTable>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        let Some(dir) = &self.dir else {
            return buchberger(table, gens);
        };
        let key = cache_key(table, gens);
        let path = dir.join(format!("{key}.json"));
        if let Some(gb) = self.load(&path, &key, table) {
            return Ok(gb);
        }
        let gb = buchberger(table, gens)?;
        self.store(dir, &path, &key, &gb)?;
        Ok(gb)
    }
}
