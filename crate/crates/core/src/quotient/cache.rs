//! Line-delimited JSON store of representations, one file per `(r, n, k)`.
//!
//! Each record is `{"deg":k,"a":[...],"b":[...]}` with 0-based image arrays.
//! A final line `{"complete":true,"count":N}` seals the file; unsealed or
//! inconsistent files are rejected. Writers hold an exclusive advisory lock
//! and publish by rename, so readers never see a partial file.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{factorial, partitions, PermRep, RepEnumeration};
use crate::cancel::HeckoidContext;
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "HECKOID_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Trailer {
    complete: bool,
    count: usize,
}

#[derive(Clone, Debug)]
pub struct RepCache {
    dir: PathBuf,
}

impl RepCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(RepCache { dir })
    }

    /// The directory named by `HECKOID_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => RepCache::new(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, ctx: &HeckoidContext, k: usize) -> PathBuf {
        let r = ctx.r();
        self.dir
            .join(format!("r{}_{}_n{}_k{}.jsonl", r.numer(), r.denom(), ctx.n(), k))
    }

    fn lock_file(&self) -> Result<File> {
        Ok(OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.dir.join(".lock"))?)
    }

    /// Store a complete enumeration.
    pub fn put(&self, ctx: &HeckoidContext, e: &RepEnumeration) -> Result<()> {
        if !e.complete {
            return Err(Error::Cache("refusing to store a partial enumeration".into()));
        }
        let lock = self.lock_file()?;
        lock.lock()?;
        let target = self.path_for(ctx, e.degree);
        let tmp = target.with_extension(format!("tmp{}", std::process::id()));
        let result = (|| -> Result<()> {
            let mut f = File::create(&tmp)?;
            for rep in &e.reps {
                let line = serde_json::to_string(rep).map_err(|x| Error::Cache(x.to_string()))?;
                writeln!(f, "{line}")?;
            }
            let trailer = Trailer {
                complete: true,
                count: e.reps.len(),
            };
            let line = serde_json::to_string(&trailer).map_err(|x| Error::Cache(x.to_string()))?;
            writeln!(f, "{line}")?;
            f.sync_all()?;
            fs::rename(&tmp, &target)?;
            Ok(())
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        lock.unlock()?;
        result
    }

    /// Load and re-verify a stored enumeration. A missing file is a miss.
    pub fn get(&self, ctx: &HeckoidContext, k: usize) -> Result<Option<RepEnumeration>> {
        let path = self.path_for(ctx, k);
        if !path.exists() {
            return Ok(None);
        }
        let lock = self.lock_file()?;
        lock.lock_shared()?;
        let read = File::open(&path).map(BufReader::new);
        let lines: std::io::Result<Vec<String>> = match read {
            Ok(r) => r.lines().collect(),
            Err(e) => Err(e),
        };
        lock.unlock()?;
        let lines = lines?;
        let bad = |msg: String| Error::Cache(format!("{}: {msg}", path.display()));
        let (last, body) = lines
            .split_last()
            .ok_or_else(|| bad("empty file".into()))?;
        let trailer: Trailer =
            serde_json::from_str(last).map_err(|_| bad("missing completion trailer".into()))?;
        if !trailer.complete || trailer.count != body.len() {
            return Err(bad("trailer does not match the records".into()));
        }
        let mut reps = Vec::with_capacity(body.len());
        for (i, line) in body.iter().enumerate() {
            let raw: PermRep =
                serde_json::from_str(line).map_err(|x| bad(format!("line {}: {x}", i + 1)))?;
            let rep = PermRep::new(raw.a, raw.b).map_err(|x| bad(format!("line {}: {x}", i + 1)))?;
            if rep.degree != k || raw.degree != k {
                return Err(bad(format!("line {}: degree {} in a degree-{k} file", i + 1, raw.degree)));
            }
            if !rep.satisfies(ctx) {
                return Err(bad(format!("line {}: relator not satisfied", i + 1)));
            }
            reps.push(rep);
        }
        Ok(Some(RepEnumeration {
            degree: k,
            reps,
            complete: true,
            candidates_checked: factorial(k) * partitions(k).len() as u64,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancel::build_context;
    use crate::quotient::enumerate_reps;
    use itertools::Itertools;

    #[test]
    fn round_trip_miss_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = RepCache::new(dir.path()).unwrap();
        let ctx = build_context("2/5".parse().unwrap(), 2).unwrap();
        assert_eq!(cache.get(&ctx, 4).unwrap(), None);

        let e = enumerate_reps(&ctx, 4, None).unwrap();
        cache.put(&ctx, &e).unwrap();
        assert_eq!(cache.get(&ctx, 4).unwrap(), Some(e.clone()));

        let path = cache.path_for(&ctx, 4);
        let text = fs::read_to_string(&path).unwrap();
        let first = text.lines().next().unwrap().to_string();
        // swap a generator image for one that breaks the relator
        let forged = first.replace("\"b\":[", "\"b\":[9,");
        fs::write(&path, text.replacen(&first, &forged, 1)).unwrap();
        assert!(matches!(cache.get(&ctx, 4), Err(Error::Cache(_))));

        // genuine permutations that violate the relator
        let probe = (0..4u8)
            .permutations(4)
            .map(|b| PermRep::new(vec![1, 2, 3, 0], b).unwrap())
            .find(|r| !r.satisfies(&ctx))
            .expect("some pair violates the relator");
        let line = serde_json::to_string(&probe).unwrap();
        fs::write(&path, format!("{line}\n{{\"complete\":true,\"count\":1}}\n")).unwrap();
        assert!(matches!(cache.get(&ctx, 4), Err(Error::Cache(_))));

        // unsealed file
        fs::write(&path, text.lines().next().unwrap()).unwrap();
        assert!(cache.get(&ctx, 4).is_err());

        let partial = enumerate_reps(&ctx, 4, Some(10)).unwrap();
        assert!(cache.put(&ctx, &partial).is_err());
    }
}
