//! The `bartnik_data` JSON document.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format;
use crate::surface::{BartnikData, Provenance, RadialProfile};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(rename = "type")]
    kind: String,
    parameterization: String,
    label: String,
    t: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    #[serde(rename = "H")]
    mean_curvature: Vec<f64>,
}

pub fn to_json(data: &BartnikData) -> String {
    let p = &data.profile;
    format::to_json(&Document {
        kind: "bartnik_data".into(),
        parameterization: "revolution".into(),
        label: data.label.clone(),
        t: p.t().to_vec(),
        alpha: p.alpha().to_vec(),
        beta: p.beta().to_vec(),
        mean_curvature: p.mean_curvature().to_vec(),
    })
}

/// Parses and structurally validates a document. Parsed data carry
/// [`Provenance::File`].
pub fn from_json(text: &str) -> Result<BartnikData> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))?;
    if doc.kind != "bartnik_data" {
        return Err(Error::InvalidDocument(format!(
            "unexpected type `{}`",
            doc.kind
        )));
    }
    if doc.parameterization != "revolution" {
        return Err(Error::InvalidDocument(format!(
            "unsupported parameterization `{}`",
            doc.parameterization
        )));
    }
    let profile = RadialProfile::new(doc.t, doc.alpha, doc.beta, doc.mean_curvature)?;
    Ok(BartnikData::new(profile, doc.label, Provenance::File))
}
