//! Output writers: CSV with a commented header block, P2 graymaps of
//! log-scaled magnitude grids, and the JSON run manifest with checksums.
//!
//! Floats are written in shortest-roundtrip exponential form, so repeated
//! runs of the same config produce byte-identical files.

use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::CliError;

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:e}")
    }
}

/// RFC 4180 quoting: only fields containing separators, quotes or newlines
/// are wrapped.
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub struct OutputWriter {
    dir: PathBuf,
    config_hash: String,
    files: Vec<(String, String, u64)>,
}

impl OutputWriter {
    pub fn new(dir: &Path, config_hash: &str) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        Ok(OutputWriter {
            dir: dir.to_path_buf(),
            config_hash: config_hash.to_string(),
            files: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn record(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let digest = hex_digest(bytes);
        self.files.push((name.to_string(), digest, bytes.len() as u64));
        Ok(())
    }

    /// CSV with `#`-prefixed header comments carrying column names, units
    /// and the config hash.
    pub fn write_csv(
        &mut self,
        name: &str,
        comments: &[String],
        columns: &[&str],
        rows: &[Vec<String>],
    ) -> Result<(), CliError> {
        let mut buf = Vec::new();
        for line in comments {
            writeln!(buf, "# {line}").unwrap();
        }
        writeln!(buf, "# config_hash: {}", self.config_hash).unwrap();
        writeln!(
            buf,
            "{}",
            columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")
        )
        .unwrap();
        for row in rows {
            writeln!(
                buf,
                "{}",
                row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")
            )
            .unwrap();
        }
        self.record(name, &buf)
    }

    /// Plain-text (P2) graymap of a magnitude grid after log-scale
    /// normalization over eight decades below the maximum. Rows are the
    /// second index, so a [k][θ] grid renders with k along x.
    pub fn write_pgm(&mut self, name: &str, grid: &[Vec<f64>]) -> Result<(), CliError> {
        let width = grid.len();
        let height = grid.first().map_or(0, |r| r.len());
        let max = grid
            .iter()
            .flatten()
            .copied()
            .filter(|v| v.is_finite())
            .fold(0.0_f64, f64::max);
        let decades = 8.0;
        let floor = max * 10f64.powf(-decades);
        let mut buf = Vec::new();
        writeln!(buf, "P2").unwrap();
        writeln!(buf, "# log-scaled magnitudes, {decades} decades below max").unwrap();
        writeln!(buf, "# config_hash: {}", self.config_hash).unwrap();
        writeln!(buf, "{width} {height}").unwrap();
        writeln!(buf, "255").unwrap();
        for row in 0..height {
            let mut line = Vec::with_capacity(width);
            for col in grid.iter() {
                let v = col[row];
                let level = if !v.is_finite() || v <= floor || max <= 0.0 {
                    0
                } else {
                    let t = ((v / floor).log10() / decades).clamp(0.0, 1.0);
                    (t * 255.0).round() as u8
                };
                line.push(level.to_string());
            }
            writeln!(buf, "{}", line.join(" ")).unwrap();
        }
        self.record(name, &buf)
    }

    /// Flat key-value manifest plus the checksummed file list.
    pub fn write_manifest(
        &mut self,
        entries: &[(String, serde_json::Value)],
    ) -> Result<(), CliError> {
        let mut map = serde_json::Map::new();
        map.insert(
            "config_hash".to_string(),
            serde_json::Value::String(self.config_hash.clone()),
        );
        for (k, v) in entries {
            map.insert(k.clone(), v.clone());
        }
        let files: Vec<serde_json::Value> = self
            .files
            .iter()
            .map(|(name, sha, bytes)| {
                serde_json::json!({
                    "file": name,
                    "sha256": sha,
                    "bytes": bytes,
                })
            })
            .collect();
        map.insert("files".to_string(), serde_json::Value::Array(files));
        let body = serde_json::to_vec_pretty(&serde_json::Value::Object(map))
            .expect("manifest serializes");
        let path = self.dir.join("manifest.json");
        fs::write(&path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn json_num(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}
