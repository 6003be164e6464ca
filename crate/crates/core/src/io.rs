//! Instance and solution JSON files.
//!
//! An instance file is `{"k": int, "customers": [[x, y], ...]}`; the order of
//! `customers` defines customer indices. Numbers are written as the shortest
//! decimal that parses back to the same `f64`, so files round-trip exactly.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::geometry::Point;
use crate::{Instance, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub k: usize,
    pub customers: Vec<[f64; 2]>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        Self {
            k: inst.k(),
            customers: inst.customers().iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let customers = self
            .customers
            .into_iter()
            .map(|[x, y]| Point::new(x, y))
            .collect();
        Instance::new(customers, self.k)
    }
}

/// Compact canonical encoding: fixed key order, no whitespace.
pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from(inst)).expect("instance serializes")
}

pub fn instance_to_json_pretty(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from(inst)).expect("instance serializes")
}

/// Parse errors and validation errors for instance documents.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] crate::Error),
}

pub fn instance_from_json(text: &str) -> Result<Instance, ParseError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    Ok(file.into_instance()?)
}

/// First 16 hex digits of the SHA-256 of the canonical encoding.
pub fn instance_id(inst: &Instance) -> String {
    let digest = Sha256::digest(instance_to_json(inst).as_bytes());
    hex::encode(&digest[..8])
}
