//! CSV and manifest emission.
//!
//! Numbers are printed in scientific form with 12 significant digits, which
//! is locale-independent and byte-stable across reruns. Each CSV opens with
//! a `# run <id>` comment tying it to the manifest written next to it; the
//! id is a hash of the resolved parameters, so identical invocations yield
//! identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

/// 12 significant digits, scientific.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

/// FNV-1a over the canonical parameter string.
pub fn run_id(canonical: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in canonical.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x1000_0000_01b3);
    }
    format!("{hash:016x}")
}

pub fn write_csv(
    path: &Path,
    run: &str,
    header: &str,
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let mut buf = String::new();
    buf.push_str(&format!("# run {run}\n"));
    buf.push_str(header);
    buf.push('\n');
    for row in rows {
        buf.push_str(&row.join(","));
        buf.push('\n');
    }
    fs::write(path, buf)
}

pub fn write_manifest(path: &Path, entries: &[(String, String)]) -> std::io::Result<()> {
    let mut f = fs::File::create(path)?;
    for (k, v) in entries {
        writeln!(f, "{k} = {v}")?;
    }
    Ok(())
}
