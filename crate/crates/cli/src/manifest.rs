use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use chrono::{SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

impl FileDigest {
    pub fn of_bytes(path: &Path, data: &[u8]) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(data)),
            bytes: data.len() as u64,
        }
    }

    pub fn of_file(path: &Path) -> Result<Self> {
        let data = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Self::of_bytes(path, &data))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// Record of one invocation. Input hashes are taken before any result is
/// written.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub config: serde_json::Value,
    pub inputs: Vec<FileDigest>,
    pub seed: Option<u64>,
    /// "flag" or "drawn"
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_source: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
    pub tool: Tool,
    pub started_at: String,
    pub finished_at: Option<String>,
    pub exit_code: Option<u8>,
    pub outputs: Vec<FileDigest>,
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn start(command: &str, inputs: &[&Path]) -> Result<Self> {
        let inputs = inputs.iter().map(|p| FileDigest::of_file(p)).collect::<Result<_>>()?;
        Ok(Self {
            command: command.to_string(),
            argv: std::env::args().collect(),
            config: serde_json::Value::Null,
            inputs,
            seed: None,
            seed_source: None,
            rng: None,
            tool: Tool {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            started_at: now(),
            finished_at: None,
            exit_code: None,
            outputs: Vec::new(),
        })
    }

    pub fn config<T: Serialize>(&mut self, c: &T) -> Result<()> {
        self.config = serde_json::to_value(c)?;
        Ok(())
    }

    /// Write `data` to `path` ("-" is stdout) and list it.
    pub fn emit(&mut self, path: &Path, data: &[u8]) -> Result<()> {
        if path == Path::new("-") {
            use std::io::Write;
            std::io::stdout().write_all(data)?;
            return Ok(());
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        fs::write(path, data).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(FileDigest::of_bytes(path, data));
        Ok(())
    }

    /// Finish and write the manifest to `explicit`, or next to the first
    /// output file. Nothing is written when neither exists.
    pub fn finish(mut self, explicit: Option<&Path>, code: u8) -> Result<Option<PathBuf>> {
        self.finished_at = Some(now());
        self.exit_code = Some(code);
        let path = match (explicit, self.outputs.first()) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(first)) => {
                let first = PathBuf::from(&first.path);
                let dir = first.parent().map(Path::to_path_buf).unwrap_or_default();
                dir.join(format!("{}.manifest.json", self.command))
            }
            (None, None) => return Ok(None),
        };
        let mut text = serde_json::to_string_pretty(&self)?;
        text.push('\n');
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(Some(path))
    }
}
