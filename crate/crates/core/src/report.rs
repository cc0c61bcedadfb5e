//! Verdicts with the evidence that produced them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::spectral2d::SpectrumWindow;

/// One checked item of a campaign.
///
/// `gate` lists the verdicts that must hold for the item to pass. Items that
/// could not be evaluated carry `error` and fail.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub verdicts: BTreeMap<String, bool>,
    pub residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spectra: BTreeMap<String, SpectrumWindow>,
    pub gate: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn new(kind: impl Into<String>) -> Self {
        VerificationReport {
            kind: kind.into(),
            ..Default::default()
        }
    }

    pub fn failed_item(kind: impl Into<String>, parameters: BTreeMap<String, String>, error: impl ToString) -> Self {
        VerificationReport {
            kind: kind.into(),
            parameters,
            error: Some(error.to_string()),
            ..Default::default()
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(name.to_owned(), value.to_string());
        self
    }

    pub fn verdict(&mut self, name: &str, value: bool) -> &mut Self {
        self.verdicts.insert(name.to_owned(), value);
        self
    }

    pub fn gated(&mut self, name: &str, value: bool) -> &mut Self {
        self.gate.push(name.to_owned());
        self.verdict(name, value)
    }

    pub fn residual(&mut self, name: &str, value: f64) -> &mut Self {
        self.residuals.insert(name.to_owned(), value);
        self
    }

    pub fn spectrum(&mut self, name: &str, window: SpectrumWindow) -> &mut Self {
        self.spectra.insert(name.to_owned(), window);
        self
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.verdicts.get(name).copied()
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.gate.iter().all(|g| self.get(g) == Some(true))
    }

    pub fn without_spectra(mut self) -> Self {
        self.spectra.clear();
        self
    }
}
