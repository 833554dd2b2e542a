//! Corpus files and the per-entry batch pipeline.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_pd, BraidWord, DiagramError, LinkDiagram, Orientation};
use crate::graphs::{build_state_graph, reduce};
use crate::kauffman::{apply_state, seifert_state, KauffmanState, StateError};
use crate::surface::{classify, GeometricType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("entry '{0}' must give exactly one of 'pd' and 'braid'")]
    InputForm(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Regression values frozen for an entry.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Expected {
    /// Jones polynomial in the text form of [`crate::jones::JonesPolynomial`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jones: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_prime: Option<i64>,
    /// Classification of the all-A state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric_type: Option<GeometricType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram, CorpusError> {
        match (&self.pd, &self.braid) {
            (Some(pd), None) => Ok(parse_pd(pd)?),
            (None, Some(b)) => Ok(b.parse::<BraidWord>()?.closure()?),
            _ => Err(CorpusError::InputForm(self.name.clone())),
        }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

pub fn parse_corpus(json: &str) -> Result<Vec<CorpusEntry>, serde_json::Error> {
    serde_json::from_str(json)
}

/// How to pick a state for a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpec {
    AllA,
    AllB,
    /// Oriented resolution for the reference orientation.
    Seifert,
    Explicit(KauffmanState),
}

impl StateSpec {
    pub fn resolve(&self, diagram: &LinkDiagram) -> Result<KauffmanState, StateError> {
        let c = diagram.crossing_count();
        let state = match self {
            StateSpec::AllA => KauffmanState::all_a(c),
            StateSpec::AllB => KauffmanState::all_b(c),
            StateSpec::Seifert => seifert_state(diagram, &Orientation::reference(diagram)),
            StateSpec::Explicit(s) => s.clone(),
        };
        if state.len() != c {
            return Err(StateError::LengthMismatch {
                given: state.len(),
                expected: c,
            });
        }
        Ok(state)
    }
}

impl FromStr for StateSpec {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all-a" => Ok(StateSpec::AllA),
            "all-b" => Ok(StateSpec::AllB),
            "seifert" => Ok(StateSpec::Seifert),
            _ => s.parse().map(StateSpec::Explicit),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::AllA => f.write_str("all-a"),
            StateSpec::AllB => f.write_str("all-b"),
            StateSpec::Seifert => f.write_str("seifert"),
            StateSpec::Explicit(s) => write!(f, "{s}"),
        }
    }
}

/// One row of the batch table. Columns are fixed: name, adequate,
/// homogeneous, beta_prime, chi, orientable, geometric_type, error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub adequate: Option<bool>,
    pub homogeneous: Option<bool>,
    /// `1 - chi` of the reduced all-A state graph; empty when all-A is inadequate.
    pub beta_prime: Option<i64>,
    pub chi: Option<i64>,
    pub orientable: Option<bool>,
    pub geometric_type: Option<GeometricType>,
    pub error: Option<String>,
}

impl BatchRow {
    fn failed(name: &str, err: impl fmt::Display) -> Self {
        Self {
            name: name.to_string(),
            adequate: None,
            homogeneous: None,
            beta_prime: None,
            chi: None,
            orientable: None,
            geometric_type: None,
            error: Some(err.to_string()),
        }
    }
}

pub fn analyze_entry(entry: &CorpusEntry, spec: &StateSpec) -> Result<BatchRow, CorpusError> {
    let d = entry.diagram()?;
    let state = spec.resolve(&d)?;
    let report = classify(&d, &state)?;
    let all_a = apply_state(&d, &KauffmanState::all_a(d.crossing_count()))?;
    let beta_prime = reduce(&build_state_graph(&all_a))
        .ok()
        .map(|g| g.stable_coefficient());
    Ok(BatchRow {
        name: entry.name.clone(),
        adequate: Some(report.hypotheses.adequate),
        homogeneous: Some(report.hypotheses.homogeneous),
        beta_prime,
        chi: Some(report.surface.chi),
        orientable: Some(report.surface.orientable),
        geometric_type: Some(report.geometric_type),
        error: None,
    })
}

/// Rows in input order; entries are processed in parallel and a failing
/// entry yields a row carrying its error.
pub fn run_batch(entries: &[CorpusEntry], spec: &StateSpec) -> Vec<BatchRow> {
    entries
        .par_iter()
        .map(|e| analyze_entry(e, spec).unwrap_or_else(|err| BatchRow::failed(&e.name, err)))
        .collect()
}
