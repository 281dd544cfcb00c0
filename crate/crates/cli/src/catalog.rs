//! Named equations shipped in `data/catalog.json`, plus the generated
//! second-order standard equations `St:<group>`.

use std::sync::OnceLock;

use fuchsian_core::exactalg::RationalFunction;
use fuchsian_core::odeanalysis::LinearODE;
use fuchsian_core::sympow::{standard_equation, Group};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_expression_in, ParseError};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// An operator written coefficient-wise, `a_0` first.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EquationSource {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub var: String,
    pub coefficients: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PullbackRecord {
    pub equation: String,
    pub partner: String,
    pub map: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    pub entries: Vec<EquationSource>,
    pub pullbacks: Vec<PullbackRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("in {name}, coefficient {index}: {source}")]
    Parse { name: String, index: usize, source: ParseError },
    #[error("{0}")]
    Operator(#[from] fuchsian_core::Error),
}

pub fn catalog_file() -> &'static CatalogFile {
    static FILE: OnceLock<CatalogFile> = OnceLock::new();
    FILE.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("bundled catalog is valid JSON"))
}

impl EquationSource {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_operator(&self) -> Result<LinearODE, CatalogError> {
        let parse = |index: usize, text: &str| {
            parse_expression_in(text, &self.var).map_err(|source| CatalogError::Parse { name: self.name.clone(), index, source })
        };
        let coeffs: Vec<RationalFunction> =
            self.coefficients.iter().enumerate().map(|(i, t)| parse(i, t)).collect::<Result<_, _>>()?;
        let op = match &self.leading {
            Some(lead) => LinearODE::with_leading(&parse(self.coefficients.len(), lead)?, coeffs)?,
            None => LinearODE::new(coeffs)?,
        };
        Ok(op.with_var(&self.var))
    }
}

/// All keys: file entries first, then the standard equations.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = catalog_file().entries.iter().map(|e| e.name.clone()).collect();
    names.extend(["St:A4", "St:S4", "St:A5", "St:D2n:<n>"].map(String::from));
    names
}

pub fn catalog_source(name: &str) -> Option<&'static EquationSource> {
    catalog_file().entries.iter().find(|e| e.name == name)
}

pub fn catalog(name: &str) -> Result<LinearODE, CatalogError> {
    if let Some(g) = name.strip_prefix("St:") {
        let group: Group = g.parse().map_err(|_| CatalogError::UnknownKey(name.to_string()))?;
        return Ok(standard_equation(group));
    }
    catalog_source(name).ok_or_else(|| CatalogError::UnknownKey(name.to_string()))?.to_operator()
}

pub fn pullback_records() -> &'static [PullbackRecord] {
    &catalog_file().pullbacks
}
