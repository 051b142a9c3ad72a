//! Census catalog: a JSON list of gem files with optional context and
//! expected regression values.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedValues {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_genus_central: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_gem_induced: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub path: String,
    pub label: String,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub m_prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta2: Option<u32>,
    /// Heegaard genus of the boundary, when the user knows it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_heegaard: Option<u32>,
    /// Closed-manifold gems sweep all five apex colors in the census.
    #[serde(default)]
    pub closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedValues>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn load(path: &Path) -> anyhow::Result<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("cannot read catalog {}: {}", path.display(), e))?;
        let catalog: Catalog = serde_json::from_str(&text)
            .map_err(|e| anyhow::anyhow!("bad catalog {}: {}", path.display(), e))?;
        let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        Ok((catalog, base))
    }
}
