use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GreyError;

/// One column of the least-squares design matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignColumn {
    /// `-z(k)`, estimates `a`
    Background,
    /// `(2k - 1) / 2`, estimates `b`
    Trend,
    /// `1`, estimates `c`
    Intercept,
}

const FULL: &[DesignColumn] = &[
    DesignColumn::Background,
    DesignColumn::Trend,
    DesignColumn::Intercept,
];
const NO_TREND: &[DesignColumn] = &[DesignColumn::Background, DesignColumn::Intercept];
const NO_INTERCEPT: &[DesignColumn] = &[DesignColumn::Background, DesignColumn::Trend];

/// The fractional grey model family and its classical reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelVariant {
    /// Fractional, linear grey action, optimized parameters.
    #[serde(rename = "FAGMO11K")]
    Fagmo11k,
    /// Fractional, linear grey action.
    #[serde(rename = "FAGM11K")]
    Fagm11k,
    /// Fractional, constant grey action (`b = 0`).
    #[serde(rename = "FAGM11")]
    Fagm11,
    /// Optimized non-homogeneous model: FAGMO at `r = 1`.
    #[serde(rename = "ONGM11K")]
    Ongm11k,
    /// `r = 1`, linear grey action.
    #[serde(rename = "GM11KC")]
    Gm11kc,
    /// `r = 1`, `c = 0`.
    #[serde(rename = "GM11K")]
    Gm11k,
    /// `r = 1`, `b = 0`.
    #[serde(rename = "GM11")]
    Gm11,
}

impl ModelVariant {
    pub const ALL: [ModelVariant; 7] = [
        ModelVariant::Fagmo11k,
        ModelVariant::Fagm11k,
        ModelVariant::Fagm11,
        ModelVariant::Ongm11k,
        ModelVariant::Gm11kc,
        ModelVariant::Gm11k,
        ModelVariant::Gm11,
    ];

    /// Serialized tag, e.g. `FAGMO11K`.
    pub fn tag(self) -> &'static str {
        match self {
            ModelVariant::Fagmo11k => "FAGMO11K",
            ModelVariant::Fagm11k => "FAGM11K",
            ModelVariant::Fagm11 => "FAGM11",
            ModelVariant::Ongm11k => "ONGM11K",
            ModelVariant::Gm11kc => "GM11KC",
            ModelVariant::Gm11k => "GM11K",
            ModelVariant::Gm11 => "GM11",
        }
    }

    /// Conventional name, e.g. `FAGMO(1,1,k)`.
    pub fn display_name(self) -> &'static str {
        match self {
            ModelVariant::Fagmo11k => "FAGMO(1,1,k)",
            ModelVariant::Fagm11k => "FAGM(1,1,k)",
            ModelVariant::Fagm11 => "FAGM(1,1)",
            ModelVariant::Ongm11k => "ONGM(1,1,k,c)",
            ModelVariant::Gm11kc => "GM(1,1,k,c)",
            ModelVariant::Gm11k => "GM(1,1,k)",
            ModelVariant::Gm11 => "GM(1,1)",
        }
    }

    /// Whether the fitted `(a, b, c)` are mapped to `(alpha, beta, gamma)`.
    pub fn is_optimized(self) -> bool {
        matches!(self, ModelVariant::Fagmo11k | ModelVariant::Ongm11k)
    }

    /// Whether the variant is only defined at `r = 1`.
    pub fn is_order_locked(self) -> bool {
        matches!(
            self,
            ModelVariant::Ongm11k | ModelVariant::Gm11kc | ModelVariant::Gm11k | ModelVariant::Gm11
        )
    }

    pub fn columns(self) -> &'static [DesignColumn] {
        match self {
            ModelVariant::Fagm11 | ModelVariant::Gm11 => NO_TREND,
            ModelVariant::Gm11k => NO_INTERCEPT,
            _ => FULL,
        }
    }
}

impl fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ModelVariant {
    type Err = GreyError;

    /// Accepts the tag (`FAGMO11K`) or the short CLI name (`fagmo`), case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = match s.trim().to_ascii_lowercase().as_str() {
            "fagmo" | "fagmo11k" => ModelVariant::Fagmo11k,
            "fagm" | "fagm11k" => ModelVariant::Fagm11k,
            "fagm11" => ModelVariant::Fagm11,
            "ongm" | "ongm11k" => ModelVariant::Ongm11k,
            "gm11kc" => ModelVariant::Gm11kc,
            "gm11k" => ModelVariant::Gm11k,
            "gm11" => ModelVariant::Gm11,
            other => {
                return Err(GreyError::InvalidInput(format!(
                    "unknown model variant `{other}`"
                )))
            }
        };
        Ok(v)
    }
}
