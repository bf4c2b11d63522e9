//! Best-effort disk memoization of kernel eliminations.
//!
//! Set THETA_LAB_CACHE to a directory to activate it; unset means no
//! caching at all. Entries are keyed by a content hash of the exact
//! elimination input (shape, operator family, monomial span), so a hit
//! can only ever replay the same computation. Reads that fail for any
//! reason fall back to recomputing, and writes are silently dropped on
//! error: the cache trades time, never correctness.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::basis::MonoSpan;
use crate::diffop::Op;
use crate::rational::{parse_rat, rat_string, Rat};

/// Directory named by the environment, if caching is on.
fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("THETA_LAB_CACHE").map(PathBuf::from)
}

pub(crate) fn enabled() -> bool {
    cache_dir().is_some()
}

pub(crate) fn kernel_key(ops: &[&Op], span: &MonoSpan) -> String {
    let mut h = Sha256::new();
    let shape = span.shape();
    h.update(format!("rows {} cols {}\n", shape.n, shape.k));
    for op in ops {
        h.update(op.to_string());
        h.update("\n");
    }
    h.update("span\n");
    for m in span.monomials() {
        for e in m.exps() {
            h.update(e.to_le_bytes());
        }
        h.update("|");
    }
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

pub(crate) fn load_kernel(key: &str, len: usize) -> Option<Vec<Vec<Rat>>> {
    let path = cache_dir()?.join(format!("{key}.json"));
    let text = fs::read_to_string(path).ok()?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text).ok()?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != len {
            return None;
        }
        let mut v = Vec::with_capacity(len);
        for s in row {
            v.push(parse_rat(&s).ok()?);
        }
        out.push(v);
    }
    Some(out)
}

pub(crate) fn store_kernel(key: &str, kernel: &[Vec<Rat>]) {
    let Some(dir) = cache_dir() else { return };
    if fs::create_dir_all(&dir).is_err() {
        return;
    }
    let rows: Vec<Vec<String>> = kernel
        .iter()
        .map(|r| r.iter().map(rat_string).collect())
        .collect();
    let Ok(text) = serde_json::to_string(&rows) else {
        return;
    };
    // write-then-rename so concurrent processes never see a torn entry
    let tmp = dir.join(format!("{key}.tmp-{}", std::process::id()));
    if fs::write(&tmp, text).is_ok() {
        let _ = fs::rename(&tmp, dir.join(format!("{key}.json")));
    }
}
