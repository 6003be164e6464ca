//! Run manifests: everything needed to repeat a campaign exactly.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use crate::Command;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Command line as typed.
    pub argv: Vec<String>,
    /// Subcommand with every default resolved.
    pub command: Command,
    pub seed: u64,
    pub jobs: Option<usize>,
    /// Files the run writes, relative to the output directory.
    pub artifacts: Vec<String>,
}

impl RunManifest {
    pub fn new(argv: &[String], command: Command, seed: u64, jobs: Option<usize>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            argv: argv.to_vec(),
            command,
            seed,
            jobs,
            artifacts: Vec::new(),
        }
    }

    pub fn write(&self, dir: &Path) -> anyhow::Result<()> {
        let path = dir.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self)?;
        fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}
