//! On-disk cache for p_n, mu_n and gamma_n.
//!
//! One JSON file per `(kind, q, n)`, written atomically. A file that fails to
//! parse or validate is reported on stderr and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use drinfeld::algebra::text::SparseSeries;
use drinfeld::algebra::{Field, RatFuncField, SeriesPoly};
use drinfeld::legendre::{pn, Mode};
use drinfeld::supersingular::{mu_gamma, JKind, JPoly};
use drinfeld::Result;
use serde::{Deserialize, Serialize};

pub const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    format: u32,
    kind: String,
    q: u64,
    n: u32,
    poly: SparseSeries,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    fn path(&self, kind: &str, q: u64, n: u32) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{kind}-q{q}-n{n}.json")))
    }

    /// `p_n` in closed form, through the cache.
    pub fn pn(&self, k: &RatFuncField, n: u32) -> Result<SeriesPoly> {
        self.cached(
            k,
            "pn",
            n,
            |s| check_pn(k, n, s),
            || pn(k, n as i32, Mode::Closed),
        )
    }

    pub fn jpoly(&self, k: &RatFuncField, n: u32, kind: JKind) -> Result<JPoly> {
        let s = self.cached(
            k,
            kind.name(),
            n,
            |s| {
                let j = JPoly::from_series(s).map_err(|e| e.to_string())?;
                if !j.is_monic() {
                    return Err("not monic".into());
                }
                Ok(())
            },
            || Ok(mu_gamma(k, n, kind)?.to_series(k)),
        )?;
        JPoly::from_series(&s)
    }

    fn cached(
        &self,
        k: &RatFuncField,
        kind: &str,
        n: u32,
        validate: impl Fn(&SeriesPoly) -> std::result::Result<(), String>,
        compute: impl FnOnce() -> Result<SeriesPoly>,
    ) -> Result<SeriesPoly> {
        let Some(path) = self.path(kind, k.q(), n) else {
            return compute();
        };
        if path.exists() {
            match load(k, &path, kind, n).and_then(|s| validate(&s).map(|_| s)) {
                Ok(s) => return Ok(s),
                Err(why) => eprintln!(
                    "warning: ignoring cache file {}: {why}; recomputing",
                    path.display()
                ),
            }
        }
        let value = compute()?;
        if let Err(e) = store(k, &path, kind, n, &value) {
            eprintln!(
                "warning: could not write cache file {}: {e}",
                path.display()
            );
        }
        Ok(value)
    }
}

fn load(
    k: &RatFuncField,
    path: &Path,
    kind: &str,
    n: u32,
) -> std::result::Result<SeriesPoly, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let entry: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if entry.format != CACHE_FORMAT {
        return Err(format!("format {} is not {CACHE_FORMAT}", entry.format));
    }
    if entry.kind != kind || entry.q != k.q() || entry.n != n {
        return Err("key does not match the file name".into());
    }
    entry.poly.to_series(k).map_err(|e| e.to_string())
}

fn store(
    k: &RatFuncField,
    path: &Path,
    kind: &str,
    n: u32,
    value: &SeriesPoly,
) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let entry = Entry {
        format: CACHE_FORMAT,
        kind: kind.to_string(),
        q: k.q(),
        n,
        poly: SparseSeries::from_series(k.base(), value),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &entry)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Monic, constant term `(-1)^n`, `2^n` terms, T-power denominators.
fn check_pn(k: &RatFuncField, n: u32, s: &SeriesPoly) -> std::result::Result<(), String> {
    if s.var() != "x" {
        return Err("wrong indeterminate".into());
    }
    if n < 63 && s.num_terms() as u64 != 1u64 << n {
        return Err("wrong number of terms".into());
    }
    if s.leading() != Some(&k.one()) {
        return Err("not monic".into());
    }
    let sign = if n % 2 == 1 { k.neg(&k.one()) } else { k.one() };
    if s.coeff(0) != Some(&sign) {
        return Err("wrong constant term".into());
    }
    if s.terms().any(|(_, c)| c.t_power_denominator().is_none()) {
        return Err("denominator is not a power of T".into());
    }
    Ok(())
}
