//! Memo persistence under `RECURSE_RING_CACHE_DIR`.
//!
//! One text file per system, `<name>-<digest>.memo`, where the digest covers
//! the normalized system text. Each line is `<word> <z>` with `z = 1` when
//! the word is zero and `z = 0` otherwise; `#` lines are comments.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use recurse_ring::monomial::MonomialEngine;
use recurse_ring::{serialize_system, RecursionSystem};
use sha2::{Digest, Sha256};

pub const ENV: &str = "RECURSE_RING_CACHE_DIR";

pub fn path_for(sys: &RecursionSystem) -> Option<PathBuf> {
    let dir = std::env::var_os(ENV)?;
    let digest = Sha256::digest(serialize_system(sys).as_bytes());
    let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    Some(PathBuf::from(dir).join(format!("{}-{hex}.memo", sys.name())))
}

/// Seeds the engine from the cache file; malformed lines are skipped.
pub fn load(engine: &mut MonomialEngine, sys: &RecursionSystem) -> usize {
    let Some(path) = path_for(sys) else { return 0 };
    let Ok(text) = fs::read_to_string(&path) else { return 0 };
    let mut loaded = 0;
    for line in text.lines() {
        if line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(word), Some(flag), None) = (parts.next(), parts.next(), parts.next()) else { continue };
        let zero = match flag {
            "1" => true,
            "0" => false,
            _ => continue,
        };
        if let Ok(w) = engine.parse(word) {
            engine.seed_memo(w, zero);
            loaded += 1;
        }
    }
    loaded
}

pub fn save(engine: &MonomialEngine, sys: &RecursionSystem) -> io::Result<()> {
    let Some(path) = path_for(sys) else { return Ok(()) };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut entries: Vec<(String, bool)> =
        engine.memo_entries().filter(|(w, _)| !w.is_empty()).map(|(w, z)| (engine.render(w), z)).collect();
    entries.sort();
    let tmp = path.with_extension("memo.tmp");
    let mut out = BufWriter::new(fs::File::create(&tmp)?);
    writeln!(out, "# recurse-ring memo for system {}: <word> <1 if zero, 0 if nonzero>", sys.name())?;
    for (w, z) in entries {
        writeln!(out, "{w} {}", u8::from(z))?;
    }
    out.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    fs::rename(tmp, path)
}
