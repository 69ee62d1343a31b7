//! JSON map documents.
//!
//! ```json
//! {"kind": "exterior", "alpha": [1, 0], "beta": [0, -0.1666], "A": [0, 0.25],
//!  "a": [[4, 0, -0.125]], "b": []}
//! ```
//!
//! Coefficients are `[index, re, im]` triples; scalars `alpha`, `beta`, `A`
//! are `[re, im]` pairs. Interior documents carry only `a`, `b` and the
//! optional `order`/`label`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::harmonic::{Coefficients, ExteriorMap, InteriorMap};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Interior,
    Exterior,
}

/// `[index, re, im]`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term(pub usize, pub f64, pub f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub kind: MapKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<[f64; 2]>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub log_coeff: Option<[f64; 2]>,
    #[serde(default)]
    pub a: Vec<Term>,
    #[serde(default)]
    pub b: Vec<Term>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: line {line}, column {column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: field `{field}`: {message}")]
    Invalid {
        origin: String,
        field: &'static str,
        message: String,
    },
}

/// A validated map.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedMap {
    Interior(InteriorMap<f64>),
    Exterior(ExteriorMap<f64>),
}

fn pair(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn unpair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn terms(ts: &[Term]) -> Vec<(usize, Complex64)> {
    ts.iter().map(|t| (t.0, Complex64::new(t.1, t.2))).collect()
}

fn unterms(cs: &Coefficients<f64>) -> Vec<Term> {
    cs.iter().map(|(n, c)| Term(n, c.re, c.im)).collect()
}

impl MapDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| {
            // serde_json appends the position, which is reported separately
            let mut message = e.to_string();
            if let Some(i) = message.rfind(" at line ") {
                message.truncate(i);
            }
            DocumentError::Syntax {
                origin: origin.to_owned(),
                line: e.line(),
                column: e.column(),
                message,
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, DocumentError> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
            path: origin.clone(),
            source,
        })?;
        Self::parse(&text, &origin)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Validates the document and builds the map it describes.
    pub fn to_map(&self, origin: &str) -> Result<LoadedMap, DocumentError> {
        let invalid = |field: &'static str, message: String| DocumentError::Invalid {
            origin: origin.to_owned(),
            field,
            message,
        };
        if let Some(order) = self.order {
            if !(order > 0.0 && order < 1.0) {
                return Err(invalid("order", format!("must lie in (0, 1), got {order}")));
            }
        }
        match self.kind {
            MapKind::Interior => {
                for (field, present) in [
                    ("alpha", self.alpha.is_some()),
                    ("beta", self.beta.is_some()),
                    ("A", self.log_coeff.is_some()),
                ] {
                    if present {
                        return Err(invalid(field, "only exterior maps carry this field".into()));
                    }
                }
                let a = Coefficients::new("analytic", 2, terms(&self.a)).map_err(|e| invalid("a", e.to_string()))?;
                let b = Coefficients::new("co-analytic", 1, terms(&self.b)).map_err(|e| invalid("b", e.to_string()))?;
                Ok(LoadedMap::Interior(InteriorMap::from_parts(a, b)))
            }
            MapKind::Exterior => {
                let alpha = self
                    .alpha
                    .ok_or_else(|| invalid("alpha", "required for exterior maps".into()))?;
                let a = Coefficients::new("analytic", 1, terms(&self.a)).map_err(|e| invalid("a", e.to_string()))?;
                let b = Coefficients::new("co-analytic", 1, terms(&self.b)).map_err(|e| invalid("b", e.to_string()))?;
                let beta = self.beta.map(pair).unwrap_or_default();
                let log_coeff = self.log_coeff.map(pair).unwrap_or_default();
                ExteriorMap::from_parts(pair(alpha), beta, a, b, log_coeff)
                    .map(LoadedMap::Exterior)
                    .map_err(|e| match e {
                        crate::Error::NotSensePreserving { .. } => invalid("beta", e.to_string()),
                        _ => invalid("alpha", e.to_string()),
                    })
            }
        }
    }

    pub fn from_interior(f: &InteriorMap<f64>) -> Self {
        MapDocument {
            kind: MapKind::Interior,
            label: None,
            order: None,
            alpha: None,
            beta: None,
            log_coeff: None,
            a: unterms(f.a()),
            b: unterms(f.b()),
        }
    }

    pub fn from_exterior(f: &ExteriorMap<f64>) -> Self {
        MapDocument {
            kind: MapKind::Exterior,
            label: None,
            order: None,
            alpha: Some(unpair(f.alpha())),
            beta: Some(unpair(f.beta())),
            log_coeff: Some(unpair(f.log_coeff())),
            a: unterms(f.a()),
            b: unterms(f.b()),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}
