//! Corpus files: a JSON array of `{ring: {vars, char}, generators: [..]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::report::RingSpec;
use crate::HarnessError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub ring: RingSpec,
    pub generators: Vec<String>,
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, HarnessError> {
    let err = |message: String| HarnessError::Corpus { path: path.display().to_string(), message };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

pub fn corpus_entry(path: &Path, index: usize) -> Result<CorpusEntry, HarnessError> {
    let entries = load_corpus(path)?;
    let len = entries.len();
    entries.into_iter().nth(index).ok_or_else(|| HarnessError::Corpus {
        path: path.display().to_string(),
        message: format!("index {index} out of range for {len} entries"),
    })
}
