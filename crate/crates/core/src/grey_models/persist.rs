//! JSON model documents.
//!
//! Floats are written in shortest round-trip form and parsed back exactly,
//! so a saved `f64` model reloads bit-for-bit.

use serde::{Deserialize, Serialize};

use crate::error::{GreyError, Result};
use crate::scalar::Real;
use crate::series::Label;

use super::model::{FittedModel, OrderSearchRecord};
use super::params::{BaseParams, OptParams};
use super::variant::ModelVariant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: u32,
    pub variant: ModelVariant,
    pub r: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub x0: f64,
    pub nu: usize,
    pub n_total: usize,
    pub labels: Vec<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_search: Option<OrderSearchRecord>,
}

fn narrow<T: Real>(v: f64, name: &str) -> Result<T> {
    T::from_f64(v)
        .filter(|x| x.is_finite())
        .ok_or_else(|| GreyError::NonFinite(format!("model field `{name}`")))
}

impl<T: Real> From<&FittedModel<T>> for ModelDocument {
    fn from(m: &FittedModel<T>) -> Self {
        let opt = m.opt();
        Self {
            schema_version: SCHEMA_VERSION,
            variant: m.variant(),
            r: m.r().to_f64_lossy(),
            a: m.base().a.to_f64_lossy(),
            b: m.base().b.to_f64_lossy(),
            c: m.base().c.to_f64_lossy(),
            alpha: opt.map(|o| o.alpha.to_f64_lossy()),
            beta: opt.map(|o| o.beta.to_f64_lossy()),
            gamma: opt.map(|o| o.gamma.to_f64_lossy()),
            x0: m.x0().to_f64_lossy(),
            nu: m.nu(),
            n_total: m.n_total(),
            labels: m.labels().to_vec(),
            order_search: m.order_search().copied(),
        }
    }
}

impl ModelDocument {
    pub fn into_model<T: Real>(self) -> Result<FittedModel<T>> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(GreyError::InvalidInput(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.labels.len() != self.n_total {
            return Err(GreyError::InvalidInput(format!(
                "{} labels for n_total = {}",
                self.labels.len(),
                self.n_total
            )));
        }
        let base = BaseParams::new(
            narrow(self.a, "a")?,
            narrow(self.b, "b")?,
            narrow(self.c, "c")?,
        );
        let opt = match (self.alpha, self.beta, self.gamma) {
            (Some(alpha), Some(beta), Some(gamma)) => Some(OptParams::new(
                narrow(alpha, "alpha")?,
                narrow(beta, "beta")?,
                narrow(gamma, "gamma")?,
            )),
            (None, None, None) => None,
            _ => {
                return Err(GreyError::InvalidInput(
                    "alpha, beta and gamma must be all present or all null".into(),
                ))
            }
        };
        let model = FittedModel::from_stored(
            self.variant,
            narrow(self.r, "r")?,
            base,
            opt,
            narrow(self.x0, "x0")?,
            self.nu,
            self.labels,
        )?;
        Ok(match self.order_search {
            Some(rec) => model.with_order_search(rec),
            None => model,
        })
    }
}

impl<T: Real> FittedModel<T> {
    pub fn to_document(&self) -> ModelDocument {
        ModelDocument::from(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("model document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_str(text)
            .map_err(|e| GreyError::InvalidInput(format!("malformed model file: {e}")))?;
        doc.into_model()
    }
}
