//! Grid search for the fractional order `r`.
//!
//! Every candidate on `r_min, r_min + step, ...` up to `r_max` is fitted
//! independently; candidates that fail to fit are skipped. The minimum is
//! taken in grid order with a strict comparison, so ties resolve to the
//! smaller order whatever the evaluation order was.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GreyError, Result};
use crate::eval_metrics::evaluate;
use crate::grey_models::{fit, ModelVariant};
use crate::scalar::Real;
use crate::series::{Series, MIN_SAMPLES};

pub const DEFAULT_R_MIN: f64 = 0.01;
pub const DEFAULT_R_MAX: f64 = 2.0;
pub const REPRODUCTION_STEP: f64 = 1e-4;
pub const FAST_STEP: f64 = 0.01;

/// Criterion minimized over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Objective {
    /// In-sample RMSPE over the training range.
    #[default]
    Rmspepr,
    /// RMSPE over every observation, holdout included.
    Rmspe,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Rmspepr => "RMSPEPR",
            Objective::Rmspe => "RMSPE",
        })
    }
}

impl FromStr for Objective {
    type Err = GreyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rmspepr" => Ok(Objective::Rmspepr),
            "rmspe" => Ok(Objective::Rmspe),
            other => Err(GreyError::InvalidInput(format!(
                "unknown objective `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderSearchConfig<T> {
    pub r_min: T,
    pub r_max: T,
    pub step: T,
    pub objective: Objective,
    pub variant: ModelVariant,
    pub nu: usize,
}

impl<T: Real> OrderSearchConfig<T> {
    /// Reproduction-grade defaults: `[0.01, 2]` at step `1e-4`, RMSPEPR.
    pub fn new(variant: ModelVariant, nu: usize) -> Self {
        Self {
            r_min: T::lit(DEFAULT_R_MIN),
            r_max: T::lit(DEFAULT_R_MAX),
            step: T::lit(REPRODUCTION_STEP),
            objective: Objective::default(),
            variant,
            nu,
        }
    }

    /// Coarse grid at step `0.01`.
    pub fn fast(variant: ModelVariant, nu: usize) -> Self {
        Self {
            step: T::lit(FAST_STEP),
            ..Self::new(variant, nu)
        }
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_step(mut self, step: T) -> Self {
        self.step = step;
        self
    }

    pub fn with_range(mut self, r_min: T, r_max: T) -> Self {
        self.r_min = r_min;
        self.r_max = r_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.r_min.is_finite() && self.r_max.is_finite() && self.step.is_finite();
        if !finite || self.r_min <= T::zero() || self.r_min >= self.r_max || self.step <= T::zero()
        {
            return Err(GreyError::InvalidInput(format!(
                "order grid needs 0 < r_min < r_max and step > 0, got [{}, {}] step {}",
                self.r_min, self.r_max, self.step
            )));
        }
        if self.variant.is_order_locked() {
            return Err(GreyError::InvalidInput(format!(
                "{} is fixed at r = 1; there is no order to search",
                self.variant
            )));
        }
        if self.nu < MIN_SAMPLES {
            return Err(GreyError::TooFewSamples {
                needed: MIN_SAMPLES,
                got: self.nu,
            });
        }
        Ok(())
    }

    /// Candidate orders `r_min + i * step`, computed by multiplication so that
    /// halving the step reproduces every coarse point exactly.
    pub fn grid(&self) -> Vec<T> {
        let span = ((self.r_max - self.r_min) / self.step).to_f64_lossy();
        let count = (span + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.r_min + T::from_index(i) * self.step)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CandidateStatus {
    Ok,
    Failed(GreyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint<T> {
    pub r: T,
    pub objective: Option<T>,
    pub status: CandidateStatus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderSearchResult<T> {
    pub r: T,
    pub objective_value: T,
}

/// Objective of a single candidate order.
pub fn objective_at<T: Real>(raw: &Series<T>, r: T, config: &OrderSearchConfig<T>) -> Result<T> {
    let model = fit(raw, r, config.variant, config.nu)?;
    let predicted = model.predict(0)?;
    let report = evaluate(raw.values(), predicted.values(), config.nu)?;
    let value = match config.objective {
        Objective::Rmspepr => report.rmspepr,
        Objective::Rmspe => report.rmspe,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(GreyError::NonFinite(format!(
            "{} at r = {r}",
            config.objective
        )))
    }
}

/// Evaluates every grid point. Output is in grid order.
pub fn profile<T: Real>(
    raw: &Series<T>,
    config: &OrderSearchConfig<T>,
) -> Result<Vec<ProfilePoint<T>>> {
    config.validate()?;
    if config.nu > raw.len() {
        return Err(GreyError::InvalidInput(format!(
            "training length {} exceeds series length {}",
            config.nu,
            raw.len()
        )));
    }
    Ok(config
        .grid()
        .into_par_iter()
        .map(|r| match objective_at(raw, r, config) {
            Ok(v) => ProfilePoint {
                r,
                objective: Some(v),
                status: CandidateStatus::Ok,
            },
            Err(e) => ProfilePoint {
                r,
                objective: None,
                status: CandidateStatus::Failed(e),
            },
        })
        .collect())
}

/// Lowest feasible point of a profile; ties go to the smaller order.
pub fn minimum<T: Real>(points: &[ProfilePoint<T>]) -> Result<OrderSearchResult<T>> {
    let mut best: Option<OrderSearchResult<T>> = None;
    for p in points {
        if let Some(v) = p.objective {
            if best.is_none_or(|b| v < b.objective_value) {
                best = Some(OrderSearchResult {
                    r: p.r,
                    objective_value: v,
                });
            }
        }
    }
    best.ok_or(GreyError::NoFeasibleOrder)
}

pub fn search_order<T: Real>(
    raw: &Series<T>,
    config: &OrderSearchConfig<T>,
) -> Result<OrderSearchResult<T>> {
    minimum(&profile(raw, config)?)
}

/// `r,objective,status` CSV of a profile.
pub fn profile_csv<T: Real>(points: &[ProfilePoint<T>]) -> String {
    let mut out = String::from("r,objective,status\n");
    for p in points {
        let objective = p.objective.map(|v| v.to_string()).unwrap_or_default();
        let status = match &p.status {
            CandidateStatus::Ok => "ok".to_string(),
            CandidateStatus::Failed(e) => {
                let text = e.to_string();
                let name = text.split(':').next().unwrap_or("error").to_string();
                format!("fit_failed:{name}")
            }
        };
        out.push_str(&format!("{},{},{}\n", p.r, objective, status));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac_accum::{inverse_accumulate_values, FracOrder};
    use crate::grey_models::ResponseFn;

    #[test]
    fn grid_endpoints() {
        let cfg = OrderSearchConfig::<f64>::fast(ModelVariant::Fagmo11k, 10);
        let g = cfg.grid();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 0.01);
        assert!((g[199] - 2.0).abs() < 1e-12);
        assert_eq!(
            OrderSearchConfig::<f64>::new(ModelVariant::Fagmo11k, 10)
                .grid()
                .len(),
            19901
        );
    }

    #[test]
    fn halved_step_contains_coarse_grid() {
        let coarse = OrderSearchConfig::<f64>::fast(ModelVariant::Fagmo11k, 10);
        let fine = coarse.with_step(coarse.step / 2.0);
        let fine_grid = fine.grid();
        for (i, r) in coarse.grid().into_iter().enumerate() {
            assert_eq!(fine_grid[2 * i], r);
        }
    }

    #[test]
    fn invalid_configs() {
        let base = OrderSearchConfig::<f64>::fast(ModelVariant::Fagmo11k, 10);
        assert!(base.with_range(0.0, 2.0).validate().is_err());
        assert!(base.with_range(1.0, 0.5).validate().is_err());
        assert!(base.with_step(0.0).validate().is_err());
        assert!(OrderSearchConfig::<f64>::fast(ModelVariant::Gm11, 10)
            .validate()
            .is_err());
        assert!(OrderSearchConfig::<f64>::fast(ModelVariant::Fagm11k, 3)
            .validate()
            .is_err());
    }

    #[test]
    fn recovers_generating_order() {
        let acc = ResponseFn::new(0.4, 1.0, 20.0, 1.5).values(11);
        let raw = inverse_accumulate_values(&acc, &FracOrder::new(0.7).unwrap());
        let raw = Series::from_values(raw).unwrap();
        let cfg = OrderSearchConfig::<f64>::fast(ModelVariant::Fagmo11k, 11);
        let best = search_order(&raw, &cfg).unwrap();
        assert!((best.r - 0.7).abs() <= cfg.step + 1e-12, "r* = {}", best.r);
        assert!(best.objective_value < 1e-6);
    }

    #[test]
    fn ties_go_to_smaller_order() {
        let pts = vec![
            ProfilePoint {
                r: 0.1,
                objective: None,
                status: CandidateStatus::Failed(GreyError::NoFeasibleOrder),
            },
            ProfilePoint {
                r: 0.2,
                objective: Some(1.0),
                status: CandidateStatus::Ok,
            },
            ProfilePoint {
                r: 0.3,
                objective: Some(1.0),
                status: CandidateStatus::Ok,
            },
            ProfilePoint {
                r: 0.4,
                objective: Some(2.0),
                status: CandidateStatus::Ok,
            },
        ];
        assert_eq!(minimum(&pts).unwrap().r, 0.2);
        assert_eq!(minimum::<f64>(&pts[..1]), Err(GreyError::NoFeasibleOrder));
    }

    #[test]
    fn profile_csv_format() {
        let pts = vec![
            ProfilePoint {
                r: 0.5,
                objective: Some(1.25),
                status: CandidateStatus::Ok,
            },
            ProfilePoint {
                r: 0.75,
                objective: None,
                status: CandidateStatus::Failed(GreyError::DevelopmentCoefficientOutOfRange(2.5)),
            },
        ];
        assert_eq!(
            profile_csv(&pts),
            "r,objective,status\n0.5,1.25,ok\n0.75,,fit_failed:DevelopmentCoefficientOutOfRange\n"
        );
    }

    #[test]
    fn objective_names() {
        assert_eq!("rmspe".parse::<Objective>().unwrap(), Objective::Rmspe);
        assert_eq!("RMSPEPR".parse::<Objective>().unwrap(), Objective::Rmspepr);
        assert!("mape".parse::<Objective>().is_err());
        assert_eq!(
            serde_json::to_string(&Objective::Rmspe).unwrap(),
            "\"RMSPE\""
        );
    }
}
