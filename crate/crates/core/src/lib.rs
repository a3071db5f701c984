//! Fractional-order grey forecasting.
//!
//! The crate implements the r-order accumulated generating operation and its
//! inverse, the FAGMO(1,1,k) model with optimized parameters together with
//! its classical reductions, accuracy criteria, order selection by grid
//! search and a synthetic parameter-recovery sweep.
//!
//! ```
//! use greycast::{fit, ModelVariant, Series64};
//!
//! let data = Series64::observed(
//!     (2006..=2017).collect(),
//!     vec![12.4, 14.1, 15.5, 15.9, 16.7, 19.5, 22.0, 25.3, 30.0, 38.6, 48.2, 56.2],
//! )
//! .unwrap();
//! let model = fit(&data, 1.1595, ModelVariant::Fagmo11k, 10).unwrap();
//! let forecast = model.predict(3).unwrap();
//! assert_eq!(forecast.labels().last(), Some(&2020));
//! assert!((forecast.values()[14] - 123.3723).abs() < 0.1);
//! ```
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64`); the accumulation
//! kernels are generic over [`Coefficient`] and also accept exact rationals.

pub mod dataset;
pub mod error;
pub mod eval_metrics;
pub mod fixtures;
pub mod frac_accum;
pub mod grey_models;
pub mod linalg;
pub mod order_select;
pub mod reproduce;
pub mod scalar;
pub mod series;
pub mod validation_harness;

pub use dataset::{parse_dataset, parse_dataset_str, DatasetError, DatasetFile};
pub use error::{GreyError, Result};
pub use eval_metrics::{evaluate, relative_errors, EvaluationReport, MetricsDocument};
pub use frac_accum::{
    accumulate, accumulate_values, build_ago_matrix, build_iago_matrix, frac_binomial,
    inv_binomial, inverse_accumulate, inverse_accumulate_values, CoeffKernel, Direction, FracOrder,
    SquareMatrix,
};
pub use grey_models::{
    alpha_gap, fit, optimize_params, BaseParams, FittedModel, ModelDocument, ModelVariant,
    OptParams, ResponseFn,
};
pub use order_select::{
    profile, search_order, CandidateStatus, Objective, OrderSearchConfig, OrderSearchResult,
    ProfilePoint,
};
pub use scalar::{Coefficient, Real};
pub use series::{Label, Series};
pub use validation_harness::{
    run_sweep, summarize, DrawPolicy, SweepCell, SweepConfig, SweepSummary,
};

pub type Series64 = Series<f64>;
pub type Series32 = Series<f32>;
pub type FracOrder64 = FracOrder<f64>;
pub type CoeffKernel64 = CoeffKernel<f64>;
pub type FittedModel64 = FittedModel<f64>;
pub type FittedModel32 = FittedModel<f32>;
pub type EvaluationReport64 = EvaluationReport<f64>;
pub type OrderSearchConfig64 = OrderSearchConfig<f64>;
pub type SweepCell64 = SweepCell<f64>;
/// Exact rational scalar for accumulation kernels.
pub type Rational = num_rational::Rational64;
