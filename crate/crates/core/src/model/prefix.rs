use std::collections::BTreeMap;

use super::{Iri, ModelError};

/// Prefix bindings (CURIE/QName style) and an optional base IRI.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixMap {
    bindings: BTreeMap<String, Iri>,
    base: Option<Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `prefix`, replacing any earlier binding.
    pub fn bind(&mut self, prefix: impl Into<String>, namespace: Iri) -> &mut Self {
        self.bindings.insert(prefix.into(), namespace);
        self
    }

    pub fn with(mut self, prefix: impl Into<String>, namespace: Iri) -> Self {
        self.bind(prefix, namespace);
        self
    }

    pub fn get(&self, prefix: &str) -> Option<&Iri> {
        self.bindings.get(prefix)
    }

    pub fn base(&self) -> Option<&Iri> {
        self.base.as_ref()
    }

    pub fn set_base(&mut self, base: Option<Iri>) {
        self.base = base;
    }

    /// Bindings sorted by prefix.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> + '_ {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Expands `prefix:reference`. The reference is appended verbatim, so
    /// CURIEs that are not valid QNames (`issn:15700844`) expand too.
    pub fn expand(&self, name: &str) -> Result<Iri, ModelError> {
        let mut parts = name.splitn(2, ':');
        let prefix = parts.next().unwrap_or_default();
        let Some(reference) = parts.next() else {
            return Err(ModelError::MalformedName(name.to_owned()));
        };
        let ns = self
            .bindings
            .get(prefix)
            .ok_or_else(|| ModelError::UnknownPrefix(prefix.to_owned()))?;
        Iri::new(format!("{}{}", ns.as_str(), reference))
    }

    /// Longest namespace that is a prefix of `iri`, with the remaining
    /// local part.
    pub fn compact<'a>(&'a self, iri: &'a Iri) -> Option<(&'a str, &'a str)> {
        self.bindings
            .iter()
            .filter(|(_, ns)| iri.as_str().starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.as_str().len())
            .map(|(p, ns)| (p.as_str(), &iri.as_str()[ns.as_str().len()..]))
    }
}

/// Convenience wrapper over [`PrefixMap::expand`].
pub fn expand_prefixed_name(pm: &PrefixMap, name: &str) -> Result<Iri, ModelError> {
    pm.expand(name)
}
