//! Persistent cache for expensive constants, keyed by (name, bit precision).
//!
//! File format: UTF-8, first line `MZVCACHE 1`, then one record per line as
//! `name<TAB>bits<TAB>decimal-string`. Values are stored with enough decimal
//! digits that re-reading a record at the precision it was stored with
//! reproduces the value bit-exactly; reading at lower precision re-rounds the
//! stored string.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use crate::numerics::{PrecisionContext, Real};
use crate::{Error, Result};

pub const CACHE_FORMAT_HEADER: &str = "MZVCACHE 1";

/// In-memory constant store with optional file persistence.
///
/// Concurrent reads and idempotent concurrent writes are allowed; entries for
/// the same key are value-identical, so last-writer-wins is harmless.
#[derive(Default)]
pub struct ConstantCache {
    entries: RwLock<HashMap<(String, u32), String>>,
}

/// Names follow the grammar `zeta_<n>`, `beta_<n>`, `pi`, `log2`.
fn valid_name(name: &str) -> bool {
    if name == "pi" || name == "log2" {
        return true;
    }
    for prefix in ["zeta_", "beta_"] {
        if let Some(rest) = name.strip_prefix(prefix) {
            return !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit());
        }
    }
    false
}

fn storage_digits(bits: u32) -> u32 {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 2
}

impl ConstantCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Looks up `name` at the context precision. An entry stored at exactly
    /// `ctx.bits()` round-trips bit-exactly; an entry stored at higher
    /// precision is re-rounded down. Returns `None` when nothing at equal or
    /// higher precision is cached.
    pub fn get(&self, name: &str, ctx: &PrecisionContext) -> Option<Real> {
        let entries = self.entries.read().expect("cache lock");
        if let Some(s) = entries.get(&(name.to_string(), ctx.bits())) {
            return Some(ctx.parse_decimal(s).expect("cached decimal string"));
        }
        let best = entries
            .iter()
            .filter(|((n, bits), _)| n == name && *bits > ctx.bits())
            .max_by_key(|((_, bits), _)| *bits)?;
        Some(ctx.parse_decimal(best.1).expect("cached decimal string"))
    }

    /// Stores `value` under `(name, ctx.bits())`. Idempotent.
    pub fn put(&self, name: &str, ctx: &PrecisionContext, value: &Real) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::InvalidArgument(format!(
                "constant name `{name}` does not match zeta_<n> | beta_<n> | pi | log2"
            )));
        }
        let rendered = value.to_decimal_sci(storage_digits(ctx.bits()));
        let mut entries = self.entries.write().expect("cache lock");
        entries.insert((name.to_string(), ctx.bits()), rendered);
        Ok(())
    }

    /// Fetches `name` or computes and stores it.
    pub fn get_or_compute(
        &self,
        name: &str,
        ctx: &PrecisionContext,
        compute: impl FnOnce() -> Real,
    ) -> Real {
        if let Some(v) = self.get(name, ctx) {
            return v;
        }
        let v = compute();
        // Invalid names cannot come from internal callers.
        self.put(name, ctx, &v).expect("internal constant name");
        v
    }

    /// Merges records from a cache file. A missing file is an empty cache; a
    /// corrupt file is treated as empty with a warning.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(CACHE_FORMAT_HEADER) {
            log::warn!(
                "cache file {} has a bad header; treating cache as empty",
                path.display()
            );
            return Ok(0);
        }
        let mut parsed = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let record = (|| {
                let name = fields.next()?;
                let bits: u32 = fields.next()?.parse().ok()?;
                let value = fields.next()?;
                if fields.next().is_some() || !valid_name(name) || bits == 0 {
                    return None;
                }
                // Must parse as a decimal number.
                crate::numerics::real::parse_decimal(value, bits).ok()?;
                Some((name.to_string(), bits, value.to_string()))
            })();
            match record {
                Some(r) => parsed.push(r),
                None => {
                    log::warn!(
                        "cache file {} is corrupt at line {}; treating cache as empty",
                        path.display(),
                        lineno + 2
                    );
                    return Ok(0);
                }
            }
        }
        let n = parsed.len();
        let mut entries = self.entries.write().expect("cache lock");
        for (name, bits, value) in parsed {
            entries.insert((name, bits), value);
        }
        Ok(n)
    }

    /// Writes all records, sorted by (name, bits), atomically.
    pub fn save(&self, path: &Path) -> Result<()> {
        let entries = self.entries.read().expect("cache lock");
        let mut records: Vec<_> = entries.iter().collect();
        records.sort();
        let mut out = String::from(CACHE_FORMAT_HEADER);
        out.push('\n');
        for ((name, bits), value) in records {
            out.push_str(&format!("{name}\t{bits}\t{value}\n"));
        }
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, out)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.entries.write().expect("cache lock").clear();
    }

    /// Snapshot of all records as (name, bits, value), sorted.
    pub fn records(&self) -> Vec<(String, u32, String)> {
        let entries = self.entries.read().expect("cache lock");
        let mut v: Vec<_> = entries
            .iter()
            .map(|((n, b), s)| (n.clone(), *b, s.clone()))
            .collect();
        v.sort();
        v
    }
}

/// Process-wide constant cache used by `zeta_int` and `beta_dirichlet`.
pub fn constants() -> &'static ConstantCache {
    static GLOBAL: OnceLock<ConstantCache> = OnceLock::new();
    GLOBAL.get_or_init(ConstantCache::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn put_then_get_same_precision_is_bit_exact() {
        let cache = ConstantCache::new();
        let ctx = PrecisionContext::new(50).unwrap();
        let v = ctx.pi();
        cache.put("pi", &ctx, &v).unwrap();
        let got = cache.get("pi", &ctx).unwrap();
        assert_eq!(got.to_rational(), v.to_rational());
    }

    #[test]
    fn get_absent_is_none() {
        let cache = ConstantCache::new();
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(cache.get("zeta_3", &ctx).is_none());
        // An entry at lower precision does not satisfy a higher-precision get.
        let low = PrecisionContext::new(5).unwrap();
        assert!(low.bits() < ctx.bits());
        cache.put("zeta_3", &low, &low.one()).unwrap();
        assert!(cache.get("zeta_3", &ctx).is_none());
    }

    #[test]
    fn lower_precision_get_rerounds() {
        let cache = ConstantCache::new();
        let hi = PrecisionContext::new(60).unwrap();
        let lo = PrecisionContext::new(20).unwrap();
        cache.put("pi", &hi, &hi.pi()).unwrap();
        let got = cache.get("pi", &lo).unwrap();
        assert_eq!(got.bits(), lo.bits());
        assert!((&got - &lo.pi()).abs() <= lo.parse_decimal("1e-25").unwrap());
    }

    #[test]
    fn invalid_names_rejected() {
        let cache = ConstantCache::new();
        let ctx = PrecisionContext::new(10).unwrap();
        for bad in ["zeta", "zeta_", "zeta_x", "gamma", "beta_1.5", "PI"] {
            assert!(cache.put(bad, &ctx, &ctx.one()).is_err(), "{bad}");
        }
        for good in ["pi", "log2", "zeta_3", "beta_12"] {
            assert!(cache.put(good, &ctx, &ctx.one()).is_ok(), "{good}");
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("constants.tsv");
        let cache = ConstantCache::new();
        let ctx = PrecisionContext::new(30).unwrap();
        cache.put("pi", &ctx, &ctx.pi()).unwrap();
        cache.put("log2", &ctx, &ctx.ln2()).unwrap();
        cache.save(&path).unwrap();

        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(CACHE_FORMAT_HEADER));

        let other = ConstantCache::new();
        assert_eq!(other.load(&path).unwrap(), 2);
        assert_eq!(
            other.get("pi", &ctx).unwrap().to_rational(),
            cache.get("pi", &ctx).unwrap().to_rational()
        );
    }

    #[test]
    fn concurrent_reads_and_idempotent_writes() {
        let cache = ConstantCache::new();
        let ctx = PrecisionContext::new(25).unwrap();
        let pi = ctx.pi();
        std::thread::scope(|scope| {
            for _ in 0..8 {
                scope.spawn(|| {
                    for _ in 0..50 {
                        cache.put("pi", &ctx, &pi).unwrap();
                        if let Some(v) = cache.get("pi", &ctx) {
                            assert_eq!(v.to_rational(), pi.to_rational());
                        }
                    }
                });
            }
        });
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn corrupt_file_treated_as_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("constants.tsv");
        fs::write(&path, "BOGUS HEADER\npi\t100\t3.14\n").unwrap();
        let cache = ConstantCache::new();
        assert_eq!(cache.load(&path).unwrap(), 0);
        assert!(cache.is_empty());

        fs::write(
            &path,
            format!("{CACHE_FORMAT_HEADER}\npi\tnot-a-number\t3.14\n"),
        )
        .unwrap();
        assert_eq!(cache.load(&path).unwrap(), 0);
        assert!(cache.is_empty());
    }

    proptest! {
        // Storing at high precision and reading back at lower precision
        // agrees with rounding the original value directly.
        #[test]
        fn reround_matches_direct_round(num in 1i64..1_000_000_000, den in 1i64..1_000_000_000, lo_digits in 5u32..20) {
            let hi = PrecisionContext::new(40).unwrap();
            let lo = PrecisionContext::new(lo_digits).unwrap();
            let q = crate::numerics::rational::rational_from_i64(num, den);
            let v = hi.from_rational(&q);
            let cache = ConstantCache::new();
            cache.put("zeta_9", &hi, &v).unwrap();
            let got = cache.get("zeta_9", &lo).unwrap();
            let direct = lo.from_rational(&q);
            // Both are within one ulp of the true value; they can differ by
            // at most one ulp from each other (double rounding).
            let ulp = lo.one() * lo.parse_decimal(&format!("1e-{}", lo_digits + lo.guard_digits() - 2)).unwrap();
            prop_assert!((&got - &direct).abs() <= ulp);
        }
    }
}
