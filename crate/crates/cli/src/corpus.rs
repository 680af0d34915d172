//! The default corpus, embedded at build time.

use std::collections::HashSet;

use serde::Deserialize;

use crate::CliError;

const MANIFEST: &str = include_str!("../corpus/manifest.toml");

const FILES: &[(&str, &str)] = &[
    ("cd2.pres", include_str!("../corpus/cd2.pres")),
    ("cd3.pres", include_str!("../corpus/cd3.pres")),
    ("cd4.pres", include_str!("../corpus/cd4.pres")),
    ("cd5.pres", include_str!("../corpus/cd5.pres")),
    ("d16.pres", include_str!("../corpus/d16.pres")),
    ("t32.pres", include_str!("../corpus/t32.pres")),
    ("t128.pres", include_str!("../corpus/t128.pres")),
    ("t512.pres", include_str!("../corpus/t512.pres")),
    ("t2048.pres", include_str!("../corpus/t2048.pres")),
    ("s64.pres", include_str!("../corpus/s64.pres")),
    ("s256.pres", include_str!("../corpus/s256.pres")),
    ("r256.pres", include_str!("../corpus/r256.pres")),
    ("r512.pres", include_str!("../corpus/r512.pres")),
];

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Formula,
    Elementary,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected<T> {
    pub value: T,
    pub source: Source,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    file: String,
    order: Option<Expected<u64>>,
    schlafli: Option<Expected<String>>,
    c_order: Option<Expected<u64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    group: Vec<RawEntry>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub file: String,
    pub text: String,
    pub order: Option<Expected<u64>>,
    pub schlafli: Option<Expected<String>>,
    pub c_order: Option<Expected<u64>>,
}

/// Parses a manifest against a set of named presentation texts. Ids must be
/// unique, files must exist, and every expected value must name a source.
pub fn parse_manifest(manifest: &str, files: &[(&str, &str)]) -> Result<Vec<CorpusEntry>, CliError> {
    let raw: Manifest = toml::from_str(manifest).map_err(|e| CliError::Corpus(e.to_string()))?;
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(raw.group.len());
    for e in raw.group {
        if !seen.insert(e.id.clone()) {
            return Err(CliError::Corpus(format!("duplicate id `{}`", e.id)));
        }
        let text = files
            .iter()
            .find(|(name, _)| *name == e.file)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| CliError::Corpus(format!("`{}` names missing file `{}`", e.id, e.file)))?;
        entries.push(CorpusEntry {
            id: e.id,
            file: e.file,
            text,
            order: e.order,
            schlafli: e.schlafli,
            c_order: e.c_order,
        });
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries)
}

/// The embedded default corpus, sorted by id.
pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_manifest(MANIFEST, FILES).expect("embedded corpus is well formed")
}
