//! Deterministic file output: fixed-precision CSV and JSON-lines writers,
//! committed atomically via a temp file in the target directory.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use helmsym::SweepRow;

/// Output format for profile and sweep tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::JsonLines => "jsonl",
        }
    }
}

/// 17 significant digits; enough to reproduce any f64 exactly.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write the full contents, then rename into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("committing {}", path.display()))?;
    Ok(())
}

pub const SWEEP_CSV_HEADER: &str =
    "scheme,k,N,kh,l2,h1,l2_scaled,h1_scaled,bound_l2,bound_h1,floor_flag";

pub fn sweep_row_csv(r: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.scheme,
        g17(r.k.value()),
        r.n,
        g17(r.kh),
        g17(r.l2_error),
        g17(r.h1_semi_error),
        g17(r.l2_scaled),
        g17(r.h1_scaled),
        g17(r.bound_l2),
        g17(r.bound_h1),
        u8::from(r.floor)
    )
}

pub fn sweep_row_json(r: &SweepRow) -> String {
    serde_json::json!({
        "scheme": r.scheme.to_string(),
        "k": r.k.value(),
        "k_spec": r.k.spec_string(),
        "N": r.n,
        "kh": r.kh,
        "l2": r.l2_error,
        "h1": r.h1_semi_error,
        "l2_scaled": r.l2_scaled,
        "h1_scaled": r.h1_scaled,
        "bound_l2": r.bound_l2,
        "bound_h1": r.bound_h1,
        "floor_flag": r.floor,
    })
    .to_string()
}

/// Canonical file name for a profile table.
pub fn profile_file_name(
    scheme: helmsym::Scheme,
    k: helmsym::WaveNumber,
    n: usize,
    p: i32,
    format: OutputFormat,
) -> PathBuf {
    PathBuf::from(format!(
        "profile_{scheme}_{}_N{n}_p{p}.{}",
        k.spec_string(),
        format.extension()
    ))
}
