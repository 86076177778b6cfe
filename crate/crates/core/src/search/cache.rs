//! JSON-lines store of search results, keyed by canonical pattern, `n` and
//! predicate. Hits are re-verified before use; lines from another schema
//! version or that fail to parse are ignored.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::SearchResult;
use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::graph6;
use crate::predicates::PredicateKind;

pub const CACHE_SCHEMA: u32 = 1;
/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "DOMSAT_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache file {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Serialize, Deserialize)]
struct Line {
    schema: u32,
    result: SearchResult,
}

type Key = (String, usize, PredicateKind);

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: HashMap<Key, SearchResult>,
    skipped: usize,
}

impl ResultCache {
    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        let mut cache = ResultCache {
            path: path.clone(),
            entries: HashMap::new(),
            skipped: 0,
        };
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(io_err(e)),
        };
        for line in BufReader::new(file).lines() {
            let line = line.map_err(io_err)?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Line>(&line) {
                Ok(l) if l.schema == CACHE_SCHEMA => {
                    let r = l.result;
                    cache.entries.insert((r.pattern.clone(), r.n, r.predicate), r);
                }
                _ => cache.skipped += 1,
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines ignored while loading.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    /// A stored result whose witnesses still pass the predicate.
    pub fn get(&self, pattern: &Graph, n: usize, predicate: PredicateKind) -> Option<SearchResult> {
        let key = (graph6::encode(&canonical_form(pattern)), n, predicate);
        let hit = self.entries.get(&key)?;
        hit.verify(pattern).ok().map(|()| hit.clone())
    }

    /// Records `result` in memory and appends it to the file.
    pub fn put(&mut self, result: &SearchResult) -> Result<(), CacheError> {
        let line = serde_json::to_string(&Line {
            schema: CACHE_SCHEMA,
            result: result.clone(),
        })
        .expect("search results serialize");
        let io_err = |source| CacheError::Io {
            path: self.path.clone(),
            source,
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(io_err)?;
        writeln!(file, "{line}").map_err(io_err)?;
        self.entries
            .insert((result.pattern.clone(), result.n, result.predicate), result.clone());
        Ok(())
    }
}
