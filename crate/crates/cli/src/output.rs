//! CSV/JSON writers and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Shortest decimal string that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Writes CSV rows to a sink, in the order given.
pub fn write_csv<W: Write>(sink: W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
}

/// Output directory that records a digest for every file written to it.
pub struct OutDir {
    root: PathBuf,
    digests: Vec<OutputDigest>,
}

impl OutDir {
    pub fn create(root: &Path) -> CliResult<Self> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self { root: root.to_path_buf(), digests: Vec::new() })
    }

    pub fn csv(&mut self, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<()> {
        let mut buf = Vec::new();
        write_csv(&mut buf, header, rows).map_err(|e| CliError::io(self.root.join(name), e.into()))?;
        self.bytes(name, &buf)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> CliResult<()> {
        let mut buf = serde_json::to_vec_pretty(value).map_err(|e| CliError::io(self.root.join(name), e.into()))?;
        buf.push(b'\n');
        self.bytes(name, &buf)
    }

    fn bytes(&mut self, name: &str, buf: &[u8]) -> CliResult<()> {
        let path = self.root.join(name);
        fs::write(&path, buf).map_err(|e| CliError::io(&path, e))?;
        self.digests.push(OutputDigest { file: name.to_string(), sha256: hex::encode(Sha256::digest(buf)) });
        Ok(())
    }

    /// Writes `manifest.json` last, listing the digests of everything before it.
    pub fn finish<C: Serialize>(mut self, manifest: Manifest<C>) -> CliResult<()> {
        let manifest = Manifest { outputs: std::mem::take(&mut self.digests), ..manifest };
        self.json("manifest.json", &manifest)
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest<C> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub master_seed: u64,
    pub config: C,
    pub timing_ms: Vec<(String, u128)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub outputs: Vec<OutputDigest>,
}

impl<C> Manifest<C> {
    pub fn new(command: &'static str, master_seed: u64, config: C) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            master_seed,
            config,
            timing_ms: Vec::new(),
            warnings: Vec::new(),
            outputs: Vec::new(),
        }
    }
}
