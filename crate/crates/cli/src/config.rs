//! Optional TOML configuration, located by the `RDFKIT_CONFIG` variable.

use std::collections::BTreeMap;
use std::path::Path;

use rdfkit::model::{DatatypeSet, Iri, PrefixMap};
use serde::Deserialize;

pub const CONFIG_ENV: &str = "RDFKIT_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {detail}")]
    Invalid { path: String, detail: String },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    recognized_datatypes: Option<Vec<String>>,
    #[serde(default)]
    default_prefixes: BTreeMap<String, String>,
    step_budget: Option<u64>,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct CliConfig {
    /// Always contains xsd:string and rdf:langString.
    pub recognized_datatypes: DatatypeSet,
    pub default_prefixes: PrefixMap,
    /// `None` means unlimited.
    pub step_budget: Option<u64>,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            recognized_datatypes: DatatypeSet::default(),
            default_prefixes: PrefixMap::new(),
            step_budget: None,
        }
    }
}

impl CliConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: shown.clone(),
            source,
        })?;
        Self::parse(&text).map_err(|detail| ConfigError::Invalid { path: shown, detail })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| e.message().to_owned())?;
        let mut config = CliConfig::default();
        if let Some(iris) = raw.recognized_datatypes {
            config.recognized_datatypes = datatypes(&iris)?;
        }
        for (prefix, namespace) in raw.default_prefixes {
            let ns = Iri::new(&namespace).map_err(|e| format!("prefix {prefix}: {e}"))?;
            config.default_prefixes.bind(prefix, ns);
        }
        match raw.step_budget {
            Some(0) => return Err("step_budget must be positive".into()),
            budget => config.step_budget = budget,
        }
        Ok(config)
    }
}

/// The minimum pair plus every listed IRI.
pub fn datatypes(iris: &[String]) -> Result<DatatypeSet, String> {
    let mut d = DatatypeSet::rdf_minimum();
    for text in iris {
        d.recognize(Iri::new(text).map_err(|e| format!("datatype {text:?}: {e}"))?);
    }
    Ok(d)
}
