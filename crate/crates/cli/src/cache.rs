//! Plain-text modulus cache: one `p/q <precision_bits> <k_decimal>` per line.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use quintic_modulus::kernel::{solve_singular_modulus, SingularModulusRecord};
use quintic_modulus::precision::to_decimal;
use quintic_modulus::{PosRational, PrecisionContext, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub r: PosRational,
    pub precision_bits: u32,
    pub k_decimal: String,
}

impl CacheEntry {
    pub fn parse_line(line: &str) -> Option<CacheEntry> {
        let mut parts = line.split_whitespace();
        let r = parts.next()?.parse().ok()?;
        let precision_bits = parts.next()?.parse().ok()?;
        let k_decimal = parts.next()?.to_string();
        if parts.next().is_some() || PrecisionContext::default().parse(&k_decimal).is_err() {
            return None;
        }
        Some(CacheEntry {
            r,
            precision_bits,
            k_decimal,
        })
    }

    pub fn to_line(&self) -> String {
        format!("{} {} {}", self.r, self.precision_bits, self.k_decimal)
    }
}

#[derive(Debug, Default)]
pub struct ModulusCache {
    path: Option<PathBuf>,
    entries: Vec<CacheEntry>,
    fresh: Vec<CacheEntry>,
    pub hits: usize,
    pub misses: usize,
}

impl ModulusCache {
    /// Cache that never persists anything.
    pub fn disabled() -> Self {
        Self::default()
    }

    /// Read the cache file if it exists; unparseable lines are skipped with a
    /// warning on stderr.
    pub fn load(path: &Path) -> io::Result<Self> {
        let mut entries = Vec::new();
        match fs::read_to_string(path) {
            Ok(text) => {
                for (no, line) in text.lines().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    match CacheEntry::parse_line(line) {
                        Some(e) => entries.push(e),
                        None => eprintln!(
                            "warning: {}:{}: skipping unrecognised cache line",
                            path.display(),
                            no + 1
                        ),
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(ModulusCache {
            path: Some(path.to_path_buf()),
            entries,
            ..Self::default()
        })
    }

    /// Stored entry usable at the requested precision (stored precision must be
    /// at least the requested one; the closest such precision wins).
    pub fn lookup(&self, r: PosRational, precision_bits: u32) -> Option<&CacheEntry> {
        self.entries
            .iter()
            .chain(&self.fresh)
            .filter(|e| e.r == r && e.precision_bits >= precision_bits)
            .min_by_key(|e| e.precision_bits)
    }

    /// Solve `k_r`, reusing a cached modulus when one is available.
    pub fn solve(
        &mut self,
        r: PosRational,
        ctx: &PrecisionContext,
    ) -> Result<SingularModulusRecord> {
        if self.path.is_some() {
            if let Some(entry) = self.lookup(r, ctx.precision_bits()) {
                let stored_ctx =
                    PrecisionContext::with_precision(entry.precision_bits).unwrap_or(*ctx);
                if let Ok(k) = stored_ctx.parse(&entry.k_decimal) {
                    let rec = SingularModulusRecord::from_modulus(r, k, ctx)?;
                    if rec.residual < ctx.tol() {
                        self.hits += 1;
                        return Ok(rec);
                    }
                }
            }
        }
        self.misses += 1;
        let rec = solve_singular_modulus(r, ctx)?;
        if self.path.is_some() {
            self.fresh.push(CacheEntry {
                r,
                precision_bits: ctx.precision_bits(),
                k_decimal: to_decimal(&rec.k),
            });
        }
        Ok(rec)
    }

    /// Append newly solved entries to the cache file.
    pub fn persist(&mut self) -> io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if self.fresh.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        for e in &self.fresh {
            writeln!(file, "{}", e.to_line())?;
        }
        self.entries.append(&mut self.fresh);
        Ok(())
    }
}
