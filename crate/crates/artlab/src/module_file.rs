//! The module description file: `{"name": .., "factors": [..], "galois": [[[..]]]}`.

use std::path::Path;

use artlab_core::{GaloisModule, Limits, ModuleDescription};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default)]
    pub name: Option<String>,
    pub factors: Vec<u64>,
    #[serde(default)]
    pub galois: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    Module(artlab_core::Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "cannot read module file: {e}"),
            LoadError::Parse(e) => write!(f, "malformed module file: {e}"),
            LoadError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<ModuleFile> for ModuleDescription {
    fn from(f: ModuleFile) -> Self {
        ModuleDescription {
            name: f.name,
            factors: f.factors,
            galois: f.galois,
        }
    }
}

pub fn parse(text: &str, limits: &Limits) -> Result<GaloisModule, LoadError> {
    let file: ModuleFile = serde_json::from_str(text).map_err(LoadError::Parse)?;
    GaloisModule::validate(&file.into(), limits).map_err(LoadError::Module)
}

pub fn load(path: &Path, limits: &Limits) -> Result<GaloisModule, LoadError> {
    let text = std::fs::read_to_string(path).map_err(LoadError::Io)?;
    parse(&text, limits)
}
